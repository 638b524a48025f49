#include "affect/ingest.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "affect/errors.hpp"
#include "affect/lexicon.hpp"
#include "text_util.hpp"

namespace affect {
namespace {

constexpr std::string_view kRequiredKeys[] = {"message_id", "thread_id", "group", "timestamp", "subject"};

std::string required_string(const nlohmann::json& obj, std::string_view key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing key '" + std::string(key) + "'");
  if (!it->is_string()) throw InputError(where + ": key '" + std::string(key) + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

std::vector<MessageRecord> parse_messages(std::istream& source) {
  std::vector<MessageRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (detail::read_line(source, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const std::string where = "messages line " + std::to_string(line_no);

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(where + ": malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw InputError(where + ": expected a JSON object");
    for (const auto& [key, _] : obj.items()) {
      const bool known = key == "author" || std::find(std::begin(kRequiredKeys), std::end(kRequiredKeys), key) !=
                                                std::end(kRequiredKeys);
      if (!known) throw InputError(where + ": unexpected key '" + key + "'");
    }

    MessageRecord rec;
    rec.message_id = required_string(obj, "message_id", where);
    rec.thread_id = required_string(obj, "thread_id", where);
    rec.group = required_string(obj, "group", where);
    const std::string ts = required_string(obj, "timestamp", where);
    rec.subject = required_string(obj, "subject", where);
    if (obj.contains("author")) rec.author = required_string(obj, "author", where);
    try {
      rec.timestamp = parse_utc_timestamp(ts);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    if (!seen.insert(rec.message_id).second) {
      throw InputError(where + ": duplicate message_id '" + rec.message_id + "'");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string strip_reply_markers(std::string_view subject) {
  std::string_view s = detail::trim(subject);
  while (s.size() >= 3 && detail::ascii_lower(s[0]) == 'r' && detail::ascii_lower(s[1]) == 'e') {
    std::size_t pos = 2;
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos >= s.size() || s[pos] != ':') break;
    s = detail::trim(s.substr(pos + 1));
  }
  return std::string(s);
}

std::vector<ThreadSummary> build_threads(const std::vector<MessageRecord>& messages) {
  struct Acc {
    const MessageRecord* earliest = nullptr;
    std::int64_t count = 0;
    std::set<std::string_view> authors;
  };
  std::unordered_map<std::string_view, Acc> by_thread;
  for (const auto& m : messages) {
    Acc& acc = by_thread[m.thread_id];
    ++acc.count;
    // Ties on timestamp keep the message seen first.
    if (acc.earliest == nullptr || m.timestamp < acc.earliest->timestamp) acc.earliest = &m;
    if (!m.author.empty()) acc.authors.insert(m.author);
  }

  std::vector<ThreadSummary> threads;
  threads.reserve(by_thread.size());
  for (const auto& [id, acc] : by_thread) {
    ThreadSummary t;
    t.thread_id = std::string(id);
    t.subject = strip_reply_markers(acc.earliest->subject);
    t.message_count = acc.count;
    t.first_month = Month::of(acc.earliest->timestamp);
    t.participant_count = static_cast<std::int64_t>(acc.authors.size());
    threads.push_back(std::move(t));
  }

  std::unordered_map<std::string_view, Instant> first_ts;
  for (const auto& [id, acc] : by_thread) first_ts.emplace(id, acc.earliest->timestamp);
  std::sort(threads.begin(), threads.end(), [&](const ThreadSummary& a, const ThreadSummary& b) {
    const Instant ta = first_ts.at(a.thread_id);
    const Instant tb = first_ts.at(b.thread_id);
    if (ta != tb) return ta < tb;
    return a.thread_id < b.thread_id;
  });
  return threads;
}

std::vector<ThreadSummary> filter_threads(const std::vector<ThreadSummary>& threads, std::int64_t min_messages) {
  if (min_messages < 1) {
    throw PreconditionError("min_messages must be at least 1, got " + std::to_string(min_messages));
  }
  std::vector<ThreadSummary> kept;
  std::copy_if(threads.begin(), threads.end(), std::back_inserter(kept),
               [&](const ThreadSummary& t) { return t.message_count >= min_messages; });
  return kept;
}

std::vector<MonthlyBucket> monthly_subject_buckets(const std::vector<ThreadSummary>& threads,
                                                   const Tokenizer& tokenizer) {
  if (threads.empty()) return {};
  const auto [lo, hi] = std::minmax_element(threads.begin(), threads.end(),
                                            [](const auto& a, const auto& b) { return a.first_month < b.first_month; });
  const Month first = lo->first_month;
  const Month last = hi->first_month;

  std::vector<MonthlyBucket> buckets(static_cast<std::size_t>(last - first + 1));
  for (std::size_t i = 0; i < buckets.size(); ++i) buckets[i].month = first + static_cast<std::int32_t>(i);

  for (const auto& t : threads) {
    MonthlyBucket& b = buckets[static_cast<std::size_t>(t.first_month - first)];
    ++b.thread_count;
    for (auto& token : tokenizer(t.subject)) ++b.token_counts[std::move(token)];
  }
  return buckets;
}

std::vector<MonthlyBucket> monthly_subject_buckets(const std::vector<ThreadSummary>& threads) {
  return monthly_subject_buckets(threads, [](std::string_view s) { return tokenize(s); });
}

AttitudeSeries load_attitude_series(std::istream& source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::pair<Month, double>> rows;
  while (detail::read_line(source, line)) {
    ++line_no;
    std::string_view text = detail::trim(line);
    if (text.empty()) continue;
    if (!have_header) {
      if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
      if (text != "month,rate") {
        throw InputError("attitude line " + std::to_string(line_no) + ": expected header 'month,rate'");
      }
      have_header = true;
      continue;
    }
    const std::string where = "attitude line " + std::to_string(line_no);
    const auto fields = detail::split_fields(text);
    if (fields.size() != 2) throw InputError(where + ": expected 2 fields");
    Month month;
    try {
      month = Month::parse(fields[0]);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    const auto rate = detail::parse_double(fields[1]);
    if (!rate) throw InputError(where + ": non-numeric rate");
    if (!(*rate >= 0.0 && *rate <= 100.0)) {
      throw InputError(where + ": rate " + std::string(fields[1]) + " for " + month.str() + " outside [0, 100]");
    }
    rows.emplace_back(month, *rate);
  }
  if (rows.empty()) throw InputError("attitude series has no rows");

  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Month prev = rows[i - 1].first;
    const Month cur = rows[i].first;
    if (cur == prev) throw InputError("attitude series: duplicate month " + cur.str());
    if (cur != prev + 1) throw InputError("attitude series: missing month " + (prev + 1).str());
  }

  AttitudeSeries series;
  series.first_month = rows.front().first;
  series.values.reserve(rows.size());
  for (const auto& [_, v] : rows) series.values.push_back(v);
  return series;
}

}  // namespace affect
