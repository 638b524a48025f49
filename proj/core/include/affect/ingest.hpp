#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "affect/month.hpp"

namespace affect {

struct MessageRecord {
  std::string message_id;
  std::string thread_id;
  std::string group;
  Instant timestamp;
  std::string subject;
  /// Optional `author` key; empty when the archive does not carry one.
  std::string author;
};

struct ThreadSummary {
  std::string thread_id;
  std::string subject;  // canonical: earliest subject, reply markers stripped
  std::int64_t message_count = 0;
  Month first_month;
  std::int64_t participant_count = 0;  // distinct non-empty authors
};

/// Lexicon-independent token counts over the canonical subjects of the
/// threads that started in `month`.
struct MonthlyBucket {
  Month month;
  std::map<std::string, std::int64_t, std::less<>> token_counts;
  std::int64_t thread_count = 0;
};

/// Monthly external attitude measurements (percent), contiguous and sorted.
struct AttitudeSeries {
  Month first_month;
  std::vector<double> values;

  MonthRange range() const { return {first_month, first_month + static_cast<std::int32_t>(values.size()) - 1}; }
};

using Tokenizer = std::function<std::vector<std::string>(std::string_view)>;

/// One JSON object per line with string keys message_id, thread_id, group,
/// timestamp and subject (plus optional author). Blank lines are skipped.
/// Throws InputError naming the line on malformed input or duplicate ids.
std::vector<MessageRecord> parse_messages(std::istream& source);

/// Strips any number of leading `re:` markers (any case, optional whitespace).
std::string strip_reply_markers(std::string_view subject);

/// One summary per thread id, ordered by (earliest timestamp, thread id).
std::vector<ThreadSummary> build_threads(const std::vector<MessageRecord>& messages);

/// Keeps threads with at least `min_messages` messages, preserving order.
std::vector<ThreadSummary> filter_threads(const std::vector<ThreadSummary>& threads, std::int64_t min_messages = 3);

/// One bucket per month from the earliest to the latest first_month, empty
/// months included. Each thread contributes its canonical subject once.
std::vector<MonthlyBucket> monthly_subject_buckets(const std::vector<ThreadSummary>& threads,
                                                   const Tokenizer& tokenizer);
std::vector<MonthlyBucket> monthly_subject_buckets(const std::vector<ThreadSummary>& threads);

/// Reads the `month,rate` CSV format; rows may be in any order but must form a
/// gap-free, duplicate-free run of months with rates in [0, 100].
AttitudeSeries load_attitude_series(std::istream& source);

}  // namespace affect
