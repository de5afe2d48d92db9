#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "toksig/records.hpp"

namespace toksig::io {

/// Line-delimited JSON loaders. Every record is validated against its type
/// invariants; the first violation aborts the load with an error citing the
/// line number and, where known, the record id.
std::vector<QuestionRecord> load_questions(const std::filesystem::path& path);
std::vector<DecodingTrace> load_traces(
    const std::filesystem::path& path,
    std::int64_t standard_window = kDefaultStandardWindow);
std::vector<AnswerResult> load_results(const std::filesystem::path& path);

/// Savers validate and then emit one compact JSON object per line, LF-ended,
/// with a stable field order and 17-significant-digit floats. Two saves of
/// equal values produce byte-identical files.
void save_questions(const std::vector<QuestionRecord>& qs,
                    const std::filesystem::path& path);
void save_traces(const std::vector<DecodingTrace>& traces,
                 const std::filesystem::path& path);
void save_results(const std::vector<AnswerResult>& results,
                  const std::filesystem::path& path);

/// Single-record serializers used by savers and by the gateway's incremental
/// writer. No trailing newline.
std::string to_jsonl(const QuestionRecord& q);
std::string to_jsonl(const DecodingTrace& t);
std::string to_jsonl(const AnswerResult& r);

DecodingTrace trace_from_json_text(const std::string& text);

/// Generic helpers shared by the CLI for its own artifacts.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace toksig::io
