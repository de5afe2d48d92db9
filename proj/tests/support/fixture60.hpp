#pragma once

// The bundled 60-question synthetic benchmark and its deterministic mock
// endpoint. Everything about a question is a pure function of its 1-based
// index, so tests can enumerate expected outcomes without running the
// pipeline:
//
//   index 1..20   probe rises,  only the chain-of-thought branch is correct
//   index 21..40  probe falls,  only the direct branch is correct
//   index 41..48  probe rises,  both branches correct (excluded from labels)
//   index 49..54  probe rises,  both branches wrong   (excluded from labels)
//   index 55..60  probe falls,  both branches wrong   (excluded from labels)
//
// Odd indices are short-answer questions, even indices two-choice multiple
// choice. tests/fixtures/questions60.jsonl is the committed rendering of
// fixture60_questions(); a test guards that they stay in sync.

#include <string>
#include <vector>

#include "toksig/internal/httplib_config.hpp"
#include "toksig/records.hpp"

namespace toksig::test {

inline constexpr int kFixtureCount = 60;
inline const std::string kFixtureBenchmark = "synth60";
inline const std::string kFixtureModel = "mock-model";

std::string fixture_id(int i);
bool fixture_is_mc(int i);
bool fixture_probe_rises(int i);
bool fixture_cot_correct(int i);
bool fixture_da_correct(int i);
std::string fixture_gold(int i);
int fixture_cot_tokens(int i);
int fixture_da_tokens(int i);
double fixture_probe_prob(int i, int position);  // 1-based position

std::vector<QuestionRecord> fixture60_questions();

/// Mock endpoint handler scripted from the fixture rules. Identifies the
/// question by the qNNN tag embedded in the prompt and the request kind by
/// the trigger phrases.
void fixture60_handler(const httplib::Request& req, httplib::Response& res);

}  // namespace toksig::test
