#pragma once

#include <filesystem>
#include <vector>

#include "toksig/evaluation.hpp"
#include "toksig/logistic.hpp"
#include "toksig/router.hpp"
#include "toksig/signature.hpp"
#include "toksig/transfer.hpp"

namespace toksig::io {

/// JSON/CSV artifact files written by the pipeline. All writers emit byte-
/// stable output: fixed field order, 17-significant-digit floats, LF endings.

void save_model(const logistic::LogisticModel& m,
                const std::filesystem::path& path);
logistic::LogisticModel load_model(const std::filesystem::path& path);

void save_run(const router::RoutingRun& run, const std::filesystem::path& path);
router::RoutingRun load_run(const std::filesystem::path& path);

void save_sheets(const std::vector<transfer::VoteSheet>& sheets,
                 const std::filesystem::path& path);
std::vector<transfer::VoteSheet> load_sheets(const std::filesystem::path& path);

struct IndicatorFile {
    std::uint64_t seed = 0;
    std::vector<signature::IndicatorReport> reports;
};
void save_indicators(const IndicatorFile& file,
                     const std::filesystem::path& path);
IndicatorFile load_indicators(const std::filesystem::path& path);

struct SummaryFile {
    std::uint64_t seed = 0;
    std::vector<eval::BenchmarkSummary> summaries;
};
void save_summaries(const SummaryFile& file, const std::filesystem::path& path);
SummaryFile load_summaries(const std::filesystem::path& path);

/// Continuation completions keyed by question id, one JSON object per line:
/// {"question_id","benchmark","model","text"}.
eval::ContinuationMap load_continuations(const std::filesystem::path& path);

/// CSV exports. Column sets are part of the external contract.
std::string indicators_csv(const std::vector<signature::IndicatorReport>& reports);
std::string curve_csv(const std::vector<signature::IndicatorReport>& reports,
                      const std::vector<std::vector<signature::PositionStat>>& curves);
std::string decisions_csv(const std::vector<router::RouteDecision>& decisions);
std::string summaries_csv(const std::vector<eval::BenchmarkSummary>& summaries);
std::string token_comparison_csv(const std::vector<eval::BenchmarkSummary>& summaries);

}  // namespace toksig::io
