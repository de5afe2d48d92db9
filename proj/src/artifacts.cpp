#include "toksig/artifacts.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "toksig/jsonl.hpp"

namespace toksig::io {

using nlohmann::json;
using namespace jsonfmt;

namespace {

json parse_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw error("malformed JSON in " + path.string() + ": " + e.what());
    }
}

std::string model_to_json(const logistic::LogisticModel& m) {
    return "{\"weight\":" + number(m.weight) + ",\"bias\":" + number(m.bias) +
           ",\"training_meta\":{\"iterations\":" + number(m.meta.iterations) +
           ",\"final_loss\":" + number(m.meta.final_loss) +
           ",\"l2_lambda\":" + number(m.meta.l2_lambda) +
           ",\"learning_rate\":" + number(m.meta.learning_rate) +
           ",\"seed\":" + number(static_cast<std::int64_t>(m.meta.seed)) + "}}";
}

logistic::LogisticModel model_from_json(const json& j) {
    logistic::LogisticModel m;
    m.weight = j.at("weight").get<double>();
    m.bias = j.at("bias").get<double>();
    const json& meta = j.at("training_meta");
    m.meta.iterations = meta.at("iterations").get<std::int64_t>();
    m.meta.final_loss = meta.at("final_loss").get<double>();
    m.meta.l2_lambda = meta.at("l2_lambda").get<double>();
    m.meta.learning_rate = meta.at("learning_rate").get<double>();
    m.meta.seed = meta.at("seed").get<std::uint64_t>();
    return m;
}

std::string decision_to_json(const router::RouteDecision& d) {
    std::string s = "{\"question_id\":" + quote(d.question_id) + ",\"rho\":";
    s += d.rho ? number(*d.rho) : "null";
    s += ",\"p_cot\":";
    s += d.p_cot ? number(*d.p_cot) : "null";
    s += ",\"choice\":" + quote(to_string(d.choice)) +
         ",\"tokens_charged\":" + number(d.tokens_charged) + "}";
    return s;
}

router::RouteDecision decision_from_json(const json& j) {
    router::RouteDecision d;
    d.question_id = j.at("question_id").get<std::string>();
    if (!j.at("rho").is_null()) d.rho = j["rho"].get<double>();
    if (!j.at("p_cot").is_null()) d.p_cot = j["p_cot"].get<double>();
    d.choice = branch_from_string(j.at("choice").get<std::string>());
    d.tokens_charged = j.at("tokens_charged").get<std::int64_t>();
    return d;
}

}  // namespace

void save_model(const logistic::LogisticModel& m,
                const std::filesystem::path& path) {
    write_file(path, model_to_json(m) + "\n");
}

logistic::LogisticModel load_model(const std::filesystem::path& path) {
    return model_from_json(parse_file(path));
}

void save_run(const router::RoutingRun& run,
              const std::filesystem::path& path) {
    std::ostringstream s;
    s << "{\"benchmark\":" << quote(run.benchmark)
      << ",\"model\":" << quote(run.model)
      << ",\"sample_size\":" << number(run.sample_size)
      << ",\"seed\":" << number(static_cast<std::int64_t>(run.seed))
      << ",\"window\":" << number(run.window) << ",\"charge_probe\":"
      << (run.charge_probe ? "true" : "false")
      << ",\"model_params\":" << model_to_json(run.model_params)
      << ",\"decisions\":[";
    for (size_t i = 0; i < run.decisions.size(); ++i) {
        if (i) s << ',';
        s << decision_to_json(run.decisions[i]);
    }
    s << "],\"accuracy\":" << number(run.accuracy)
      << ",\"token_totals\":{\"all_cot\":" << number(run.token_totals.all_cot)
      << ",\"all_da\":" << number(run.token_totals.all_da)
      << ",\"dynamic\":" << number(run.token_totals.dynamic) << "}}\n";
    write_file(path, s.str());
}

router::RoutingRun load_run(const std::filesystem::path& path) {
    json j = parse_file(path);
    router::RoutingRun run;
    run.benchmark = j.at("benchmark").get<std::string>();
    run.model = j.at("model").get<std::string>();
    run.sample_size = j.at("sample_size").get<std::int64_t>();
    run.seed = j.at("seed").get<std::uint64_t>();
    run.window = j.at("window").get<std::int64_t>();
    run.charge_probe = j.at("charge_probe").get<bool>();
    run.model_params = model_from_json(j.at("model_params"));
    for (const auto& d : j.at("decisions"))
        run.decisions.push_back(decision_from_json(d));
    run.accuracy = j.at("accuracy").get<double>();
    run.token_totals.all_cot = j.at("token_totals").at("all_cot").get<std::int64_t>();
    run.token_totals.all_da = j.at("token_totals").at("all_da").get<std::int64_t>();
    run.token_totals.dynamic = j.at("token_totals").at("dynamic").get<std::int64_t>();
    return run;
}

void save_sheets(const std::vector<transfer::VoteSheet>& sheets,
                 const std::filesystem::path& path) {
    std::ostringstream s;
    for (const transfer::VoteSheet& sheet : sheets) {
        s << "{\"question_id\":" << quote(sheet.question_id)
          << ",\"source_probs\":[";
        for (size_t i = 0; i < sheet.source_probs.size(); ++i) {
            if (i) s << ',';
            s << "{\"model\":" << quote(sheet.source_probs[i].model)
              << ",\"p\":" << number(sheet.source_probs[i].p) << "}";
        }
        s << "],\"final_label\":" << number(static_cast<std::int64_t>(sheet.final_label))
          << "}\n";
    }
    write_file(path, s.str());
}

std::vector<transfer::VoteSheet> load_sheets(const std::filesystem::path& path) {
    std::vector<transfer::VoteSheet> sheets;
    std::istringstream in(read_file(path));
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw error(path.string() + ":" + std::to_string(lineno) + ": " +
                        e.what());
        }
        transfer::VoteSheet sheet;
        sheet.question_id = j.at("question_id").get<std::string>();
        for (const auto& p : j.at("source_probs"))
            sheet.source_probs.push_back({p.at("model").get<std::string>(),
                                          p.at("p").get<double>()});
        sheet.final_label = j.at("final_label").get<int>();
        sheets.push_back(std::move(sheet));
    }
    return sheets;
}

namespace {

std::string report_to_json(const signature::IndicatorReport& r) {
    std::ostringstream s;
    s << "{\"benchmark\":" << quote(r.benchmark) << ",\"model\":" << quote(r.model)
      << ",\"window\":" << number(r.window)
      << ",\"instance_sc\":" << number(r.instance_sc)
      << ",\"aggregated_sc\":" << number(r.aggregated_sc)
      << ",\"n_questions\":" << number(r.n_questions)
      << ",\"positions_used\":" << number(r.positions_used)
      << ",\"per_instance\":[";
    for (size_t i = 0; i < r.per_instance.size(); ++i) {
        if (i) s << ',';
        s << "{\"question_id\":" << quote(r.per_instance[i].question_id)
          << ",\"rho\":"
          << (r.per_instance[i].rho ? number(*r.per_instance[i].rho) : "null")
          << "}";
    }
    s << "]}";
    return s.str();
}

signature::IndicatorReport report_from_json(const json& j) {
    signature::IndicatorReport r;
    r.benchmark = j.at("benchmark").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.window = j.at("window").get<std::int64_t>();
    r.instance_sc = j.at("instance_sc").get<double>();
    r.aggregated_sc = j.at("aggregated_sc").get<double>();
    r.n_questions = j.at("n_questions").get<std::int64_t>();
    r.positions_used = j.at("positions_used").get<std::int64_t>();
    for (const auto& p : j.at("per_instance")) {
        signature::PerInstance pi;
        pi.question_id = p.at("question_id").get<std::string>();
        if (!p.at("rho").is_null()) pi.rho = p["rho"].get<double>();
        r.per_instance.push_back(std::move(pi));
    }
    return r;
}

}  // namespace

void save_indicators(const IndicatorFile& file,
                     const std::filesystem::path& path) {
    std::ostringstream s;
    s << "{\"seed\":" << number(static_cast<std::int64_t>(file.seed))
      << ",\"reports\":[";
    for (size_t i = 0; i < file.reports.size(); ++i) {
        if (i) s << ',';
        s << report_to_json(file.reports[i]);
    }
    s << "]}\n";
    write_file(path, s.str());
}

IndicatorFile load_indicators(const std::filesystem::path& path) {
    json j = parse_file(path);
    IndicatorFile f;
    f.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& r : j.at("reports")) f.reports.push_back(report_from_json(r));
    return f;
}

namespace {

std::string summary_to_json(const eval::BenchmarkSummary& s) {
    std::ostringstream o;
    o << "{\"benchmark\":" << quote(s.benchmark) << ",\"model\":" << quote(s.model)
      << ",\"n\":" << number(s.n) << ",\"cot_acc\":" << number(s.cot_acc)
      << ",\"da_acc\":" << number(s.da_acc) << ",\"dynamic_acc\":"
      << (s.dynamic_acc ? number(*s.dynamic_acc) : "null")
      << ",\"cot_gain\":" << number(s.cot_gain)
      << ",\"significance\":{\"z\":" << number(s.significance.z)
      << ",\"p_value\":" << number(s.significance.p_value)
      << ",\"label\":" << quote(eval::to_string(s.significance.label))
      << "},\"tokens\":{\"cot\":" << number(s.tokens.cot)
      << ",\"da\":" << number(s.tokens.da) << ",\"dynamic\":"
      << (s.tokens.dynamic ? number(*s.tokens.dynamic) : "null") << "}}";
    return o.str();
}

eval::BenchmarkSummary summary_from_json(const json& j) {
    eval::BenchmarkSummary s;
    s.benchmark = j.at("benchmark").get<std::string>();
    s.model = j.at("model").get<std::string>();
    s.n = j.at("n").get<std::int64_t>();
    s.cot_acc = j.at("cot_acc").get<double>();
    s.da_acc = j.at("da_acc").get<double>();
    if (!j.at("dynamic_acc").is_null())
        s.dynamic_acc = j["dynamic_acc"].get<double>();
    s.cot_gain = j.at("cot_gain").get<double>();
    s.significance.z = j.at("significance").at("z").get<double>();
    s.significance.p_value = j.at("significance").at("p_value").get<double>();
    s.significance.label = eval::significance_from_string(
        j.at("significance").at("label").get<std::string>());
    s.tokens.cot = j.at("tokens").at("cot").get<double>();
    s.tokens.da = j.at("tokens").at("da").get<double>();
    if (!j.at("tokens").at("dynamic").is_null())
        s.tokens.dynamic = j["tokens"]["dynamic"].get<double>();
    return s;
}

}  // namespace

void save_summaries(const SummaryFile& file, const std::filesystem::path& path) {
    std::ostringstream s;
    s << "{\"seed\":" << number(static_cast<std::int64_t>(file.seed))
      << ",\"summaries\":[";
    for (size_t i = 0; i < file.summaries.size(); ++i) {
        if (i) s << ',';
        s << summary_to_json(file.summaries[i]);
    }
    s << "]}\n";
    write_file(path, s.str());
}

SummaryFile load_summaries(const std::filesystem::path& path) {
    json j = parse_file(path);
    SummaryFile f;
    f.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& s : j.at("summaries"))
        f.summaries.push_back(summary_from_json(s));
    return f;
}

eval::ContinuationMap load_continuations(const std::filesystem::path& path) {
    eval::ContinuationMap map;
    std::istringstream in(read_file(path));
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            map[j.at("question_id").get<std::string>()] =
                j.at("text").get<std::string>();
        } catch (const json::exception& e) {
            throw error(path.string() + ":" + std::to_string(lineno) + ": " +
                        e.what());
        }
    }
    return map;
}

std::string indicators_csv(
    const std::vector<signature::IndicatorReport>& reports) {
    std::ostringstream s;
    s << "benchmark,model,window,instance_sc,aggregated_sc,n_questions,"
         "positions_used\n";
    for (const auto& r : reports)
        s << r.benchmark << ',' << r.model << ',' << r.window << ','
          << number(r.instance_sc) << ',' << number(r.aggregated_sc) << ','
          << r.n_questions << ',' << r.positions_used << '\n';
    return s.str();
}

std::string curve_csv(
    const std::vector<signature::IndicatorReport>& reports,
    const std::vector<std::vector<signature::PositionStat>>& curves) {
    if (reports.size() != curves.size())
        throw error("curve_csv: reports and curves differ in length");
    std::ostringstream s;
    s << "benchmark,model,position,mean_prob,coverage\n";
    for (size_t i = 0; i < reports.size(); ++i)
        for (const auto& p : curves[i])
            s << reports[i].benchmark << ',' << reports[i].model << ','
              << p.position << ',' << number(p.mean_prob) << ','
              << number(p.coverage) << '\n';
    return s.str();
}

std::string decisions_csv(const std::vector<router::RouteDecision>& decisions) {
    std::ostringstream s;
    s << "question_id,rho,p_cot,choice,tokens_charged\n";
    for (const auto& d : decisions) {
        s << d.question_id << ',' << (d.rho ? number(*d.rho) : "") << ','
          << (d.p_cot ? number(*d.p_cot) : "") << ',' << to_string(d.choice)
          << ',' << d.tokens_charged << '\n';
    }
    return s.str();
}

std::string summaries_csv(const std::vector<eval::BenchmarkSummary>& summaries) {
    std::ostringstream s;
    s << "benchmark,model,n,cot_acc,da_acc,dynamic_acc,cot_gain,z,p_value,"
         "significance,mean_tokens_cot,mean_tokens_da,mean_tokens_dynamic\n";
    for (const auto& b : summaries) {
        s << b.benchmark << ',' << b.model << ',' << b.n << ','
          << number(b.cot_acc) << ',' << number(b.da_acc) << ','
          << (b.dynamic_acc ? number(*b.dynamic_acc) : "") << ','
          << number(b.cot_gain) << ',' << number(b.significance.z) << ','
          << number(b.significance.p_value) << ','
          << eval::to_string(b.significance.label) << ','
          << number(b.tokens.cot) << ',' << number(b.tokens.da) << ','
          << (b.tokens.dynamic ? number(*b.tokens.dynamic) : "") << '\n';
    }
    return s.str();
}

std::string token_comparison_csv(
    const std::vector<eval::BenchmarkSummary>& summaries) {
    std::ostringstream s;
    s << "benchmark,cot_tokens,dynamic_tokens\n";
    for (const auto& b : summaries) {
        if (!b.tokens.dynamic) continue;
        s << b.benchmark << ',' << number(b.tokens.cot) << ','
          << number(*b.tokens.dynamic) << '\n';
    }
    return s.str();
}

}  // namespace toksig::io
