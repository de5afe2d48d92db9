#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "support/fixture60.hpp"
#include "support/mock_server.hpp"
#include "support/temp_dir.hpp"
#include "toksig/artifacts.hpp"
#include "toksig/jsonl.hpp"

using namespace toksig;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(TOKSIG_CLI_PATH) + " " + args +
                      " >/dev/null 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct KeyEnv {
    KeyEnv() { setenv("TS_API_KEY", "test-key", 1); }
};
KeyEnv key_env_guard;

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("collect --kind standard --base-url http://x --model m") == 2);
    CHECK(run_cli("definitely-not-a-subcommand") == 2);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("runtime failures exit with code 1") {
    CHECK(run_cli("indicators --traces /nonexistent/file.jsonl") == 1);
}

TEST_CASE("replay evaluation reproduces a published gain") {
    test::TempDir dir("cli_replay");
    auto stats = dir / "stats.csv";
    io::write_file(stats,
                   "benchmark,model,n,cot_acc,da_acc\n"
                   "GSM8K,Llama-3.2-3B-Instruct,1319,72.10,8.34\n");
    auto out = dir / "summary.json";
    REQUIRE(run_cli("eval --replay " + stats.string() + " --out " +
                    out.string()) == 0);
    auto file = io::load_summaries(out);
    REQUIRE(file.summaries.size() == 1);
    CHECK(file.summaries[0].cot_gain == doctest::Approx(63.76).epsilon(1e-9));
    CHECK(file.summaries[0].significance.label == eval::Significance::positive);
    CHECK_FALSE(file.summaries[0].dynamic_acc.has_value());
}

TEST_CASE("train, route, vote, eval and report run off collected fixtures") {
    test::MockServer server(test::fixture60_handler);
    test::TempDir dir("cli_pipeline");
    auto questions_path = dir / "questions.jsonl";
    io::save_questions(test::fixture60_questions(), questions_path);

    auto gateway_args = " --base-url " + server.base_url() +
                        " --model mock-model --max-parallel 8 --backoff-ms 1";
    auto q = " --questions " + questions_path.string();

    auto std_path = dir / "standard.jsonl";
    auto cot_path = dir / "cot.jsonl";
    auto da_path = dir / "da.jsonl";
    auto cont_path = dir / "continuations.jsonl";
    REQUIRE(run_cli("collect" + q + " --kind standard --out " +
                    std_path.string() + gateway_args) == 0);
    REQUIRE(run_cli("collect" + q + " --kind cot --out " + cot_path.string() +
                    " --continuations " + cont_path.string() + gateway_args) ==
            0);
    REQUIRE(run_cli("collect" + q + " --kind da --out " + da_path.string() +
                    gateway_args) == 0);

    auto trace_args = q + " --standard-traces " + std_path.string() +
                      " --cot-traces " + cot_path.string() + " --da-traces " +
                      da_path.string() + " --continuations " +
                      cont_path.string();

    SUBCASE("indicators write the pinned CSV columns") {
        auto ind_json = dir / "ind.json";
        auto ind_csv = dir / "ind.csv";
        auto curve_csv = dir / "curve.csv";
        REQUIRE(run_cli("indicators --traces " + std_path.string() + " --out " +
                        ind_json.string() + " --csv " + ind_csv.string() +
                        " --curve " + curve_csv.string()) == 0);
        auto file = io::load_indicators(ind_json);
        REQUIRE(file.reports.size() == 1);
        // 34 rising and 26 falling probes
        CHECK(file.reports[0].instance_sc ==
              doctest::Approx(8.0 / 60.0).epsilon(1e-12));
        CHECK(file.reports[0].aggregated_sc == 1.0);
        auto csv = io::read_file(ind_csv);
        CHECK(csv.rfind("benchmark,model,window,instance_sc,aggregated_sc,"
                        "n_questions,positions_used\n",
                        0) == 0);
        auto curve = io::read_file(curve_csv);
        CHECK(curve.rfind("benchmark,model,position,mean_prob,coverage\n", 0) ==
              0);
        // 50 positions for the single group
        CHECK(std::count(curve.begin(), curve.end(), '\n') == 51);
    }

    SUBCASE("sweep emits one report per window") {
        auto ind_json = dir / "sweep.json";
        REQUIRE(run_cli("indicators --traces " + std_path.string() +
                        " --sweep --out " + ind_json.string() + " --csv " +
                        (dir / "s.csv").string() + " --curve " +
                        (dir / "c.csv").string()) == 0);
        auto file = io::load_indicators(ind_json);
        REQUIRE(file.reports.size() == 5);
        CHECK(file.reports[0].window == 10);
        CHECK(file.reports[4].window == 200);
    }

    SUBCASE("full pipeline produces consistent artifacts") {
        auto model_path = dir / "model.json";
        auto run_path = dir / "run.json";
        auto sheets_path = dir / "sheets.jsonl";
        auto summary_path = dir / "summary.json";

        REQUIRE(run_cli("train" + trace_args + " --sample-size 20 --seed 7 "
                        "--out " + model_path.string()) == 0);
        auto model = io::load_model(model_path);
        CHECK(model.weight > 0.0);
        CHECK(model.meta.seed == 7);

        REQUIRE(run_cli("route" + trace_args + " --sample-size 20 --seed 7 "
                        "--model-file " + model_path.string() + " --out " +
                        run_path.string() + " --decisions-csv " +
                        (dir / "decisions.csv").string()) == 0);
        auto run = io::load_run(run_path);
        CHECK(run.decisions.size() == 40);
        CHECK(run.accuracy == doctest::Approx(0.7).epsilon(1e-12));
        auto csv = io::read_file(dir / "decisions.csv");
        CHECK(csv.rfind("question_id,rho,p_cot,choice,tokens_charged\n", 0) == 0);

        REQUIRE(run_cli("vote --runs " + run_path.string() + " --benchmark " +
                        test::kFixtureBenchmark + " --out " +
                        sheets_path.string()) == 0);
        auto sheets = io::load_sheets(sheets_path);
        CHECK(sheets.size() == 40);

        auto eval_args = q + " --cot-traces " + cot_path.string() +
                         " --da-traces " + da_path.string() +
                         " --continuations " + cont_path.string();
        REQUIRE(run_cli("eval" + eval_args + " --run " + run_path.string() +
                        " --out " + summary_path.string() + " --results-out " +
                        (dir / "results.jsonl").string()) == 0);
        auto summary = io::load_summaries(summary_path);
        REQUIRE(summary.summaries.size() == 1);
        const auto& s = summary.summaries[0];
        CHECK(s.n == 60);
        CHECK(s.cot_acc == doctest::Approx(28.0 / 60.0).epsilon(1e-12));
        CHECK(s.da_acc == doctest::Approx(28.0 / 60.0).epsilon(1e-12));
        CHECK(s.cot_gain == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(s.significance.label == eval::Significance::none);
        CHECK(s.dynamic_acc == doctest::Approx(0.7).epsilon(1e-12));

        auto results = io::load_results(dir / "results.jsonl");
        CHECK(results.size() == 120);  // both branches, all questions

        REQUIRE(run_cli("report --summaries " + summary_path.string() +
                        " --md " + (dir / "report.md").string() + " --csv " +
                        (dir / "summary.csv").string() + " --tokens-csv " +
                        (dir / "tokens.csv").string()) == 0);
        auto md = io::read_file(dir / "report.md");
        CHECK(md.find("| synth60 |") != std::string::npos);
        CHECK(md.find("aggregate token savings") != std::string::npos);
        auto sum_csv = io::read_file(dir / "summary.csv");
        CHECK(sum_csv.rfind("benchmark,model,n,cot_acc,da_acc,dynamic_acc,"
                            "cot_gain,z,p_value,significance,mean_tokens_cot,"
                            "mean_tokens_da,mean_tokens_dynamic\n",
                            0) == 0);
        auto tok_csv = io::read_file(dir / "tokens.csv");
        CHECK(tok_csv.rfind("benchmark,cot_tokens,dynamic_tokens\n", 0) == 0);

        // single-model vote sheets reduce to the run's own decisions
        std::map<std::string, Branch> by_id;
        for (const auto& d : run.decisions) by_id[d.question_id] = d.choice;
        for (const auto& sheet : sheets) {
            Branch expect = sheet.final_label == 1 ? Branch::cot : Branch::da;
            CHECK(by_id.at(sheet.question_id) == expect);
        }
    }

    SUBCASE("collect resume prints a skip count and stays stable") {
        auto before = io::read_file(std_path);
        REQUIRE(run_cli("collect" + q + " --kind standard --out " +
                        std_path.string() + gateway_args) == 0);
        CHECK(io::read_file(std_path) == before);
    }
}
