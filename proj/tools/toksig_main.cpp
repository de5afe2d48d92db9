// Command-line front end for the token-signature routing toolkit.
//
// Subcommands mirror the pipeline stages: collect traces against an
// OpenAI-compatible endpoint, compute correlation indicators, train the
// per-benchmark router, route the holdout, aggregate cross-model votes,
// evaluate, and render reports. Every subcommand is a pure function of its
// input files, flags, and seed; re-running produces byte-identical artifacts.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "toksig/artifacts.hpp"
#include "toksig/evaluation.hpp"
#include "toksig/gateway.hpp"
#include "toksig/jsonl.hpp"
#include "toksig/logistic.hpp"
#include "toksig/router.hpp"
#include "toksig/signature.hpp"
#include "toksig/transfer.hpp"

namespace fs = std::filesystem;
using namespace toksig;

namespace {

struct GroupKey {
    std::string benchmark;
    std::string model;
    bool operator<(const GroupKey& o) const {
        return std::tie(benchmark, model) < std::tie(o.benchmark, o.model);
    }
};

std::map<GroupKey, std::vector<DecodingTrace>> group_traces(
    const std::vector<DecodingTrace>& traces, PromptKind kind) {
    std::map<GroupKey, std::vector<DecodingTrace>> groups;
    for (const DecodingTrace& t : traces)
        if (t.prompt_kind == kind)
            groups[{t.benchmark, t.model}].push_back(t);
    return groups;
}

// Traces for exactly one (benchmark, model); anything else is a wiring error.
std::vector<DecodingTrace> single_group(const std::vector<DecodingTrace>& traces,
                                        PromptKind kind, GroupKey& key_out) {
    auto groups = group_traces(traces, kind);
    if (groups.empty())
        throw error(std::string("no traces with prompt_kind ") +
                    to_string(kind) + " in input");
    if (groups.size() > 1) {
        std::string names;
        for (const auto& [k, v] : groups)
            names += " (" + k.benchmark + ", " + k.model + ")";
        throw error("expected one (benchmark, model) group, found:" + names);
    }
    key_out = groups.begin()->first;
    return std::move(groups.begin()->second);
}

std::map<std::string, QuestionRecord> question_index(
    const std::vector<QuestionRecord>& qs) {
    std::map<std::string, QuestionRecord> idx;
    for (const QuestionRecord& q : qs) idx[q.id] = q;
    return idx;
}

struct PipelineInputs {
    std::vector<QuestionRecord> questions;
    std::vector<DecodingTrace> standard_traces;
    std::vector<DecodingTrace> cot_traces;
    std::vector<DecodingTrace> da_traces;
    std::vector<AnswerResult> cot_results;
    std::vector<AnswerResult> da_results;
    std::vector<router::LabelCandidate> candidates;
    std::vector<std::string> all_ids;  // universe for this benchmark
    GroupKey key;
};

// Shared front half of train/route: score both branches and build the label
// candidates for the benchmark.
PipelineInputs load_pipeline_inputs(const fs::path& questions_path,
                                    const fs::path& standard_path,
                                    const fs::path& cot_path,
                                    const fs::path& da_path,
                                    const fs::path& continuations_path) {
    PipelineInputs in;
    in.questions = io::load_questions(questions_path);
    GroupKey std_key, cot_key, da_key;
    in.standard_traces =
        single_group(io::load_traces(standard_path), PromptKind::standard, std_key);
    in.cot_traces = single_group(io::load_traces(cot_path), PromptKind::cot, cot_key);
    in.da_traces = single_group(io::load_traces(da_path), PromptKind::da, da_key);
    if (std_key.benchmark != cot_key.benchmark ||
        cot_key.benchmark != da_key.benchmark)
        throw error("trace files disagree on benchmark: " + std_key.benchmark +
                    " / " + cot_key.benchmark + " / " + da_key.benchmark);
    in.key = cot_key;

    auto qidx = question_index(in.questions);
    eval::ContinuationMap continuations;
    if (!continuations_path.empty())
        continuations = io::load_continuations(continuations_path);
    in.cot_results = eval::score_traces(in.cot_traces, qidx, &continuations);
    in.da_results = eval::score_traces(in.da_traces, qidx, nullptr);
    in.candidates = router::build_labels(in.cot_results, in.da_results);
    for (const QuestionRecord& q : in.questions)
        if (q.benchmark == in.key.benchmark) in.all_ids.push_back(q.id);
    return in;
}

void print_failures(const gateway::CollectReport& report) {
    for (const auto& f : report.failures)
        std::cerr << "  failed: " << f.question_id << ": " << f.message << "\n";
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Token-probability probing, chain-of-thought gating, and "
                 "evaluation toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a TOML/INI config file");

    std::uint64_t seed = 0;
    std::int64_t window = kDefaultStandardWindow;
    std::string out_dir = ".";
    app.add_option("--seed", seed, "Seed for all sampled operations")
        ->capture_default_str();
    app.add_option("--window", window, "Probe window (token positions used)")
        ->capture_default_str();
    app.add_option("--out-dir", out_dir, "Directory for default output paths")
        ->capture_default_str();

    // ---- collect ----------------------------------------------------------
    auto* collect = app.add_subcommand(
        "collect", "Query an endpoint and write decoding traces");
    struct {
        std::string questions, kind, out, continuations, base_url, model;
        std::string wrapper, wrappers_file, few_shot_file, api_key_env = "TS_API_KEY";
        std::int64_t max_tokens = -1;
        double temperature = 0.0, timeout = 120.0;
        std::int64_t top_k = -1;
        int max_parallel = 4, max_retries = 3, backoff_ms = 500;
        bool chat = false, allow_partial = false;
    } c;
    collect->add_option("--questions", c.questions, "Questions JSONL file")
        ->required();
    collect->add_option("--kind", c.kind, "Prompt kind: standard|cot|da")
        ->required();
    collect->add_option("--out", c.out, "Output trace JSONL (appended, resumable)");
    collect->add_option("--continuations", c.continuations,
                        "Also collect letter-choice continuations (cot only)");
    collect->add_option("--base-url", c.base_url, "Endpoint base URL")->required();
    collect->add_option("--model", c.model, "Model name")->required();
    collect->add_option("--max-tokens", c.max_tokens,
                        "Completion cap (default 50/1024/32 per kind)");
    collect->add_option("--temperature", c.temperature, "0 means greedy")
        ->capture_default_str();
    collect->add_option("--top-k", c.top_k, "Top-k sampling (ignored when greedy)");
    collect->add_option("--max-parallel", c.max_parallel, "In-flight request cap")
        ->capture_default_str();
    collect->add_option("--max-retries", c.max_retries, "Retries on 429/5xx")
        ->capture_default_str();
    collect->add_option("--backoff-ms", c.backoff_ms, "Base retry backoff")
        ->capture_default_str();
    collect->add_option("--timeout", c.timeout, "Request timeout, seconds")
        ->capture_default_str();
    collect->add_option("--wrapper", c.wrapper,
                        "Chat wrapper name (llama3|phi|mistral|custom)");
    collect->add_option("--wrappers-file", c.wrappers_file,
                        "JSON file with extra chat wrappers");
    collect->add_option("--few-shot-prefix", c.few_shot_file,
                        "File with an exemplar block to prepend");
    collect->add_option("--api-key-env", c.api_key_env,
                        "Environment variable holding the API key")
        ->capture_default_str();
    collect->add_flag("--chat", c.chat, "Use /v1/chat/completions");
    collect->add_flag("--allow-partial", c.allow_partial,
                      "Exit 0 even when some questions failed");

    // ---- indicators --------------------------------------------------------
    auto* indicators = app.add_subcommand(
        "indicators", "Correlation indicators and probability curves");
    struct {
        std::string traces, out, csv, curve;
        double min_coverage = 0.5;
        bool sweep = false;
    } ind;
    indicators->add_option("--traces", ind.traces, "Standard trace JSONL")
        ->required();
    indicators->add_option("--out", ind.out, "Indicator report JSON");
    indicators->add_option("--csv", ind.csv, "Indicator CSV export");
    indicators->add_option("--curve", ind.curve, "Per-position curve CSV");
    indicators->add_option("--min-coverage", ind.min_coverage,
                           "Coverage floor for aggregated positions")
        ->capture_default_str();
    indicators->add_flag("--sweep", ind.sweep,
                         "Windows 10,20,50,100,200 instead of --window");

    // ---- train -------------------------------------------------------------
    auto* train = app.add_subcommand(
        "train", "Fit the per-benchmark routing classifier on a seeded sample");
    struct {
        std::string questions, standard_traces, cot_traces, da_traces,
            continuations, out;
        std::int64_t sample_size = 50;
        double learning_rate = 0.5, tolerance = 1e-9, l2_lambda = 1e-4;
        std::int64_t max_iterations = 10000;
    } tr;
    train->add_option("--questions", tr.questions)->required();
    train->add_option("--standard-traces", tr.standard_traces)->required();
    train->add_option("--cot-traces", tr.cot_traces)->required();
    train->add_option("--da-traces", tr.da_traces)->required();
    train->add_option("--continuations", tr.continuations,
                      "Continuation JSONL for multiple-choice cot scoring");
    train->add_option("--sample-size", tr.sample_size)->capture_default_str();
    train->add_option("--learning-rate", tr.learning_rate)->capture_default_str();
    train->add_option("--max-iterations", tr.max_iterations)->capture_default_str();
    train->add_option("--tolerance", tr.tolerance)->capture_default_str();
    train->add_option("--l2-lambda", tr.l2_lambda)->capture_default_str();
    train->add_option("--out", tr.out, "Model JSON output");

    // ---- route -------------------------------------------------------------
    auto* route = app.add_subcommand(
        "route", "Route every holdout question with a trained model");
    struct {
        std::string questions, standard_traces, cot_traces, da_traces,
            continuations, model_file, out, csv;
        std::int64_t sample_size = 50;
        bool charge_probe = false;
    } rt;
    route->add_option("--questions", rt.questions)->required();
    route->add_option("--standard-traces", rt.standard_traces)->required();
    route->add_option("--cot-traces", rt.cot_traces)->required();
    route->add_option("--da-traces", rt.da_traces)->required();
    route->add_option("--continuations", rt.continuations);
    route->add_option("--model-file", rt.model_file, "Trained model JSON")
        ->required();
    route->add_option("--sample-size", rt.sample_size,
                      "Must match the train invocation")
        ->capture_default_str();
    route->add_option("--out", rt.out, "Routing run JSON output");
    route->add_option("--decisions-csv", rt.csv, "Decision CSV export");
    route->add_flag("--charge-probe", rt.charge_probe,
                    "Charge the probe tokens to every decision");

    // ---- vote --------------------------------------------------------------
    auto* vote_cmd = app.add_subcommand(
        "vote", "Average routing probabilities from several source models");
    struct {
        std::vector<std::string> runs;
        std::string benchmark, out;
    } vt;
    vote_cmd->add_option("--runs", vt.runs, "Routing run JSON files")
        ->required()
        ->expected(-1);
    vote_cmd->add_option("--benchmark", vt.benchmark)->required();
    vote_cmd->add_option("--out", vt.out, "Vote sheet JSONL output");

    // ---- eval --------------------------------------------------------------
    auto* eval_cmd = app.add_subcommand(
        "eval", "Benchmark summary: accuracies, gain, significance, tokens");
    struct {
        std::string questions, cot_traces, da_traces, continuations, run,
            sheets, replay, out, results_out;
        double alpha = 0.05;
    } ev;
    eval_cmd->add_option("--questions", ev.questions);
    eval_cmd->add_option("--cot-traces", ev.cot_traces);
    eval_cmd->add_option("--da-traces", ev.da_traces);
    eval_cmd->add_option("--continuations", ev.continuations);
    eval_cmd->add_option("--run", ev.run, "Routing run JSON for dynamic columns");
    eval_cmd->add_option("--sheets", ev.sheets,
                         "Vote sheet JSONL for transferred dynamic columns");
    eval_cmd->add_option("--replay", ev.replay,
                         "CSV benchmark,model,n,cot_acc,da_acc (percent) "
                         "instead of traces");
    eval_cmd->add_option("--results-out", ev.results_out,
                         "Also write scored results JSONL");
    eval_cmd->add_option("--out", ev.out, "Summary JSON output");
    eval_cmd->add_option("--alpha", ev.alpha)->capture_default_str()->group("");

    // ---- report ------------------------------------------------------------
    auto* report_cmd = app.add_subcommand(
        "report", "Markdown tables plus plot-ready CSV bundle");
    struct {
        std::vector<std::string> summaries;
        std::string md, csv, tokens_csv;
    } rp;
    report_cmd->add_option("--summaries", rp.summaries, "Summary JSON files")
        ->required()
        ->expected(-1);
    report_cmd->add_option("--md", rp.md, "Markdown output path");
    report_cmd->add_option("--csv", rp.csv, "Summary CSV output path");
    report_cmd->add_option("--tokens-csv", rp.tokens_csv,
                           "Token comparison CSV output path");

    // Global flags (--seed, --window, --out-dir, --config) remain usable
    // after the subcommand name.
    for (CLI::App* sub : {collect, indicators, train, route, vote_cmd, eval_cmd,
                          report_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // stable usage-error code for scripting
    }

    auto out_path = [&](const std::string& explicit_path,
                        const std::string& fallback) {
        if (!explicit_path.empty()) return fs::path(explicit_path);
        fs::create_directories(out_dir);
        return fs::path(out_dir) / fallback;
    };

    if (collect->parsed()) {
        auto questions = io::load_questions(c.questions);
        if (questions.empty()) throw error("no questions in " + c.questions);
        PromptKind kind = prompt_kind_from_string(c.kind);

        gateway::EndpointConfig endpoint;
        endpoint.base_url = c.base_url;
        endpoint.model = c.model;
        endpoint.api_key_env = c.api_key_env;
        endpoint.timeout_s = c.timeout;
        endpoint.max_parallel = c.max_parallel;
        endpoint.max_retries = c.max_retries;
        endpoint.backoff_ms = c.backoff_ms;
        endpoint.use_chat_api = c.chat;
        if (!c.wrapper.empty()) {
            auto wrappers = c.wrappers_file.empty()
                                ? gateway::builtin_wrappers()
                                : gateway::load_wrappers(c.wrappers_file);
            auto it = wrappers.find(c.wrapper);
            if (it == wrappers.end())
                throw error("unknown chat wrapper '" + c.wrapper + "'");
            endpoint.chat_wrapper = it->second;
        }

        gateway::CollectOptions options;
        fs::path out = out_path(c.out, "traces_" + c.kind + ".jsonl");
        if (!c.continuations.empty())
            options.continuations_out = fs::path(c.continuations);

        gateway::PromptSpec spec =
            gateway::default_spec(kind, questions.front().format);
        if (c.max_tokens > 0) spec.sampling.max_tokens = c.max_tokens;
        spec.sampling.temperature = c.temperature;
        if (c.top_k > 0) spec.sampling.top_k = c.top_k;
        if (!c.few_shot_file.empty())
            spec.few_shot_prefix = io::read_file(c.few_shot_file);
        gateway::CollectReport total =
            gateway::collect(questions, spec, endpoint, out, options);
        std::cout << "collected " << total.succeeded << "/" << total.requested
                  << " traces (" << total.skipped << " skipped, "
                  << total.failures.size() << " failed) -> " << out.string()
                  << "\n";
        print_failures(total);
        if (!total.failures.empty() && !c.allow_partial) return 1;
        return 0;
    }

    if (indicators->parsed()) {
        auto traces = io::load_traces(ind.traces);
        auto groups = group_traces(traces, PromptKind::standard);
        if (groups.empty())
            throw error("no standard traces in " + ind.traces);

        std::vector<std::int64_t> windows =
            ind.sweep ? signature::kDefaultSweepWindows
                      : std::vector<std::int64_t>{window};
        io::IndicatorFile file;
        file.seed = seed;
        std::vector<std::vector<signature::PositionStat>> curves;
        for (const auto& [key, group] : groups) {
            for (std::int64_t w : windows) {
                file.reports.push_back(signature::build_report(
                    group, key.benchmark, key.model, w, ind.min_coverage));
                curves.push_back(signature::position_curve(group, w));
            }
        }
        fs::path out = out_path(ind.out, "indicators.json");
        io::save_indicators(file, out);
        io::write_file(out_path(ind.csv, "indicators.csv"),
                       io::indicators_csv(file.reports));
        io::write_file(out_path(ind.curve, "curve.csv"),
                       io::curve_csv(file.reports, curves));
        for (const auto& r : file.reports)
            std::cout << r.benchmark << "/" << r.model << " window " << r.window
                      << ": instance_sc " << jsonfmt::number(r.instance_sc)
                      << ", aggregated_sc " << jsonfmt::number(r.aggregated_sc)
                      << " (" << r.n_questions << " questions)\n";
        return 0;
    }

    if (train->parsed()) {
        auto in = load_pipeline_inputs(tr.questions, tr.standard_traces,
                                       tr.cot_traces, tr.da_traces,
                                       tr.continuations);
        if (in.candidates.empty())
            throw error("no label candidates: every question tied");
        auto split = router::sample_training(in.candidates, in.all_ids,
                                             tr.sample_size, seed);
        auto assembled = router::make_training_set(
            split.train, in.standard_traces, window, in.key.benchmark);
        logistic::FitConfig config;
        config.learning_rate = tr.learning_rate;
        config.max_iterations = tr.max_iterations;
        config.tolerance = tr.tolerance;
        config.l2_lambda = tr.l2_lambda;
        config.seed = seed;
        logistic::LogisticModel model = logistic::fit(assembled.set, config);
        fs::path out = out_path(tr.out, "model.json");
        io::save_model(model, out);
        std::cout << "trained on " << assembled.set.examples.size()
                  << " examples (" << assembled.dropped_ids.size()
                  << " dropped for undefined correlation): weight "
                  << jsonfmt::number(model.weight) << ", bias "
                  << jsonfmt::number(model.bias) << ", loss "
                  << jsonfmt::number(model.meta.final_loss) << " after "
                  << model.meta.iterations << " iterations -> " << out.string()
                  << "\n";
        return 0;
    }

    if (route->parsed()) {
        auto in = load_pipeline_inputs(rt.questions, rt.standard_traces,
                                       rt.cot_traces, rt.da_traces,
                                       rt.continuations);
        if (in.candidates.empty())
            throw error("no label candidates: every question tied");
        auto split = router::sample_training(in.candidates, in.all_ids,
                                             rt.sample_size, seed);
        logistic::LogisticModel model = io::load_model(rt.model_file);
        auto costs = router::build_cost_map(in.cot_results, in.da_results,
                                            in.standard_traces);
        router::RoutingRun run;
        run.benchmark = in.key.benchmark;
        run.model = in.key.model;
        run.sample_size = rt.sample_size;
        run.seed = seed;
        run.window = window;
        run.charge_probe = rt.charge_probe;
        run.model_params = model;
        run.decisions =
            router::route_benchmark(in.standard_traces, model,
                                    split.holdout_ids, window, costs,
                                    rt.charge_probe);
        auto score =
            router::score_routing(run.decisions, in.cot_results, in.da_results);
        run.accuracy = score.accuracy;
        run.token_totals = score.totals;
        fs::path out = out_path(rt.out, "run.json");
        io::save_run(run, out);
        if (!rt.csv.empty())
            io::write_file(rt.csv, io::decisions_csv(run.decisions));
        std::cout << "routed " << run.decisions.size() << " questions: accuracy "
                  << jsonfmt::number(run.accuracy) << ", tokens dynamic "
                  << run.token_totals.dynamic << " vs all-cot "
                  << run.token_totals.all_cot << " (savings "
                  << jsonfmt::number(100.0 * score.savings_pct) << "%) -> "
                  << out.string() << "\n";
        return 0;
    }

    if (vote_cmd->parsed()) {
        std::vector<router::RoutingRun> runs;
        for (const std::string& p : vt.runs) runs.push_back(io::load_run(p));
        auto sheets = transfer::build_vote_sheets(runs, vt.benchmark);
        fs::path out = out_path(vt.out, "sheets.jsonl");
        io::save_sheets(sheets, out);
        std::int64_t cot_votes = 0;
        for (const auto& s : sheets) cot_votes += s.final_label;
        std::cout << "voted " << sheets.size() << " questions from "
                  << runs.size() << " models: " << cot_votes
                  << " cot labels -> " << out.string() << "\n";
        return 0;
    }

    if (eval_cmd->parsed()) {
        io::SummaryFile file;
        file.seed = seed;
        if (!ev.replay.empty()) {
            // Replay mode: published accuracies in percent.
            std::istringstream in(io::read_file(ev.replay));
            std::string line;
            if (!std::getline(in, line))
                throw error("empty replay CSV " + ev.replay);
            size_t lineno = 1;
            while (std::getline(in, line)) {
                ++lineno;
                if (line.empty()) continue;
                std::istringstream row(line);
                std::string benchmark, model, n_s, cot_s, da_s;
                if (!std::getline(row, benchmark, ',') ||
                    !std::getline(row, model, ',') ||
                    !std::getline(row, n_s, ',') ||
                    !std::getline(row, cot_s, ',') ||
                    !std::getline(row, da_s, ','))
                    throw error(ev.replay + ":" + std::to_string(lineno) +
                                ": need benchmark,model,n,cot_acc,da_acc");
                file.summaries.push_back(eval::summarize_from_accuracies(
                    benchmark, model, std::stoll(n_s), std::stod(cot_s) / 100.0,
                    std::stod(da_s) / 100.0, ev.alpha));
            }
        } else {
            if (ev.questions.empty() || ev.cot_traces.empty() ||
                ev.da_traces.empty())
                throw error("eval needs --questions, --cot-traces and "
                            "--da-traces (or --replay)");
            auto questions = io::load_questions(ev.questions);
            auto qidx = question_index(questions);
            GroupKey cot_key, da_key;
            auto cot_traces =
                single_group(io::load_traces(ev.cot_traces), PromptKind::cot,
                             cot_key);
            auto da_traces = single_group(io::load_traces(ev.da_traces),
                                          PromptKind::da, da_key);
            eval::ContinuationMap continuations;
            if (!ev.continuations.empty())
                continuations = io::load_continuations(ev.continuations);
            auto cot_results =
                eval::score_traces(cot_traces, qidx, &continuations);
            auto da_results = eval::score_traces(da_traces, qidx, nullptr);

            std::optional<double> dynamic_acc, dynamic_tokens;
            if (!ev.run.empty()) {
                router::RoutingRun run = io::load_run(ev.run);
                dynamic_acc = run.accuracy;
                if (!run.decisions.empty())
                    dynamic_tokens =
                        static_cast<double>(run.token_totals.dynamic) /
                        static_cast<double>(run.decisions.size());
            } else if (!ev.sheets.empty()) {
                auto sheets = io::load_sheets(ev.sheets);
                auto score =
                    transfer::apply_transfer(sheets, cot_results, da_results);
                dynamic_acc = score.accuracy;
                dynamic_tokens = static_cast<double>(score.totals.dynamic) /
                                 static_cast<double>(sheets.size());
            }
            file.summaries.push_back(eval::summarize_benchmark(
                cot_key.benchmark, cot_key.model, cot_results, da_results,
                dynamic_acc, dynamic_tokens, ev.alpha));
            if (!ev.results_out.empty()) {
                std::vector<AnswerResult> all = cot_results;
                all.insert(all.end(), da_results.begin(), da_results.end());
                io::save_results(all, ev.results_out);
            }
        }
        fs::path out = out_path(ev.out, "summary.json");
        io::save_summaries(file, out);
        for (const auto& s : file.summaries)
            std::cout << s.benchmark << "/" << s.model << ": cot "
                      << jsonfmt::number(100.0 * s.cot_acc) << "%, da "
                      << jsonfmt::number(100.0 * s.da_acc) << "%, gain "
                      << jsonfmt::number(s.cot_gain) << ", significance "
                      << eval::to_string(s.significance.label) << "\n";
        std::cout << "wrote " << out.string() << "\n";
        return 0;
    }

    if (report_cmd->parsed()) {
        std::vector<eval::BenchmarkSummary> summaries;
        std::uint64_t first_seed = 0;
        for (size_t i = 0; i < rp.summaries.size(); ++i) {
            io::SummaryFile f = io::load_summaries(rp.summaries[i]);
            if (i == 0) first_seed = f.seed;
            summaries.insert(summaries.end(), f.summaries.begin(),
                             f.summaries.end());
        }
        if (summaries.empty()) throw error("no summaries to report");

        std::ostringstream md;
        md << "# Benchmark report\n\nseed: " << first_seed << "\n\n";
        md << "| benchmark | model | cot_acc | da_acc | dynamic_acc | "
              "gap_to_better | cot_gain | significance |\n";
        md << "|---|---|---|---|---|---|---|---|\n";
        char buf[64];
        auto pct = [&buf](double v) {
            std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * v);
            return std::string(buf);
        };
        auto num = [&buf](double v) {
            std::snprintf(buf, sizeof(buf), "%.2f", v);
            return std::string(buf);
        };
        double total_cot_tokens = 0.0, total_dynamic_tokens = 0.0;
        bool any_dynamic = false;
        for (const auto& s : summaries) {
            std::string dyn = "-", gap = "-";
            if (s.dynamic_acc) {
                dyn = pct(*s.dynamic_acc);
                gap = num(100.0 * (*s.dynamic_acc - std::max(s.cot_acc, s.da_acc)));
            }
            md << "| " << s.benchmark << " | " << s.model << " | "
               << pct(s.cot_acc) << " | " << pct(s.da_acc) << " | " << dyn
               << " | " << gap << " | " << num(s.cot_gain) << " | "
               << eval::to_string(s.significance.label) << " |\n";
            if (s.tokens.dynamic) {
                any_dynamic = true;
                total_cot_tokens += s.tokens.cot;
                total_dynamic_tokens += *s.tokens.dynamic;
            }
        }
        if (any_dynamic && total_cot_tokens > 0.0) {
            double savings =
                100.0 * (total_cot_tokens - total_dynamic_tokens) /
                total_cot_tokens;
            md << "\naggregate token savings vs all-cot: " << num(savings)
               << "%\n";
            std::cout << "aggregate token savings vs all-cot: " << num(savings)
                      << "%\n";
        }
        io::write_file(out_path(rp.md, "report.md"), md.str());
        io::write_file(out_path(rp.csv, "summary.csv"),
                       io::summaries_csv(summaries));
        io::write_file(out_path(rp.tokens_csv, "tokens.csv"),
                       io::token_comparison_csv(summaries));
        std::cout << "wrote report for " << summaries.size() << " summaries\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
