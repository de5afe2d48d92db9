#include <doctest.h>

#include "support/temp_dir.hpp"
#include "toksig/jsonl.hpp"
#include "toksig/prompts.hpp"

using namespace toksig;
namespace gw = toksig::gateway;

namespace {

QuestionRecord sa_question() {
    QuestionRecord q;
    q.id = "sa1";
    q.benchmark = "b";
    q.question = "What is 6 times 7?";
    q.format = AnswerFormat::short_answer;
    q.gold = "42";
    return q;
}

QuestionRecord mc_question() {
    QuestionRecord q;
    q.id = "mc1";
    q.benchmark = "b";
    q.question = "Pick the animal.";
    q.format = AnswerFormat::multiple_choice;
    q.choices = {{"A", "rock"}, {"B", "cat"}};
    q.gold = "B";
    return q;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

TEST_CASE("chain-of-thought prompts end with the trigger") {
    auto q = sa_question();
    auto spec = gw::default_spec(PromptKind::cot, q.format);
    auto prompt = gw::build_prompt(q, spec);
    CHECK(ends_with(prompt, gw::kCotTrigger));
    CHECK(prompt.find(q.question) != std::string::npos);
    CHECK(spec.sampling.max_tokens == 1024);
}

TEST_CASE("direct-answer prompts carry the format-matched trigger") {
    auto q = sa_question();
    auto prompt = gw::build_prompt(q, gw::default_spec(PromptKind::da, q.format));
    CHECK(prompt.find("The answer is") != std::string::npos);
    CHECK(prompt.find("numerical answer") != std::string::npos);

    auto mc = mc_question();
    auto mc_prompt =
        gw::build_prompt(mc, gw::default_spec(PromptKind::da, mc.format));
    CHECK(mc_prompt.find("Answer: <Your Answer Letter Choice>") !=
          std::string::npos);
    CHECK(mc_prompt.find("A. rock") != std::string::npos);
    CHECK(mc_prompt.find("B. cat") != std::string::npos);
    CHECK(gw::default_spec(PromptKind::da, mc.format).sampling.max_tokens == 32);
}

TEST_CASE("standard prompts contain no trigger at all") {
    auto q = mc_question();
    auto spec = gw::default_spec(PromptKind::standard, q.format);
    auto prompt = gw::build_prompt(q, spec);
    CHECK(prompt.find(gw::kCotTrigger) == std::string::npos);
    CHECK(prompt.find("must not include any reasoning") == std::string::npos);
    CHECK(prompt.find("Pick the animal.") != std::string::npos);
    CHECK(prompt.find("B. cat") != std::string::npos);
    CHECK(spec.sampling.max_tokens == 50);
    CHECK(spec.sampling.temperature == 0.0);
}

TEST_CASE("prompt assembly is deterministic") {
    auto q = sa_question();
    auto spec = gw::default_spec(PromptKind::cot, q.format);
    CHECK(gw::build_prompt(q, spec) == gw::build_prompt(q, spec));
}

TEST_CASE("few-shot prefix comes first, wrapper goes on last") {
    auto q = sa_question();
    auto spec = gw::default_spec(PromptKind::cot, q.format);
    spec.few_shot_prefix = "Q: 1+1?\nA: 2";
    auto wrapper = gw::builtin_wrappers().at("mistral");
    auto prompt = gw::build_prompt(q, spec, wrapper);
    CHECK(prompt.rfind("[INST]", 0) == 0);
    CHECK(ends_with(prompt, "[/INST]"));
    CHECK(prompt.find("Q: 1+1?") < prompt.find(q.question));
    CHECK(prompt.find(gw::kCotTrigger) != std::string::npos);
}

TEST_CASE("multiple choice without choices is rejected") {
    auto q = mc_question();
    q.choices.clear();
    CHECK_THROWS_AS(
        gw::build_prompt(q, gw::default_spec(PromptKind::standard, q.format)),
        error);
}

TEST_CASE("builtin wrappers carry the instruction placeholders") {
    const auto& w = gw::builtin_wrappers();
    CHECK(w.at("llama3").prefix.find("<|begin_of_text|>") == 0);
    CHECK(w.at("llama3").suffix.find("assistant") != std::string::npos);
    CHECK(w.at("phi").prefix == "<|user|>");
    CHECK(w.at("phi").suffix == "<|end|><|assistant|>");
    CHECK(w.at("mistral").prefix == "[INST]");
}

TEST_CASE("wrapper files extend and override the builtins") {
    test::TempDir dir("wrappers");
    auto path = dir / "wrappers.json";
    io::write_file(path,
                   R"({"wrappers":[{"name":"custom","prefix":"<u>","suffix":"</u>"},)"
                   R"({"name":"phi","prefix":"<p2>","suffix":"</p2>"}]})");
    auto w = gw::load_wrappers(path);
    CHECK(w.at("custom").prefix == "<u>");
    CHECK(w.at("phi").prefix == "<p2>");    // file wins
    CHECK(w.count("mistral") == 1);          // builtins kept
}
