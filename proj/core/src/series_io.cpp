#include "affect/series_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "affect/errors.hpp"
#include "json.hpp"
#include "text_util.hpp"

namespace affect {
namespace {

using Json = nlohmann::ordered_json;

std::string field(double v) { return is_missing(v) ? std::string() : detail::format_double(v); }

Json month_range_json(MonthRange r) { return Json{{"first", r.first.str()}, {"last", r.last.str()}}; }

Json number_array(const std::vector<double>& values) {
  Json arr = Json::array();
  for (double v : values) arr.push_back(v);
  return arr;
}

}  // namespace

SeriesTable to_table(const EmotionSeries& series) {
  SeriesTable table;
  table.channels = emotion_channels(series);
  for (const auto& m : series.months) {
    table.match_count.push_back(m.match_count);
    table.thread_count.push_back(m.thread_count);
  }
  return table;
}

SeriesTable with_channels(const SeriesTable& table, std::vector<NumericSeries> channels) {
  if (channels.size() != 6) throw PreconditionError("expected six emotion channels");
  const Month first = channels.front().first_month;
  const std::size_t n = channels.front().size();
  for (std::size_t c = 0; c < 6; ++c) {
    if (channels[c].name != kChannelNames[c] || !channels[c].same_axis(channels.front())) {
      throw PreconditionError("emotion channels out of order or on different axes");
    }
  }
  const std::int32_t offset = first - table.first_month();
  if (offset < 0 || static_cast<std::size_t>(offset) + n > table.size()) {
    throw PreconditionError("channels extend beyond the series table axis");
  }
  SeriesTable out;
  out.channels = std::move(channels);
  const auto begin = static_cast<std::ptrdiff_t>(offset);
  const auto end = begin + static_cast<std::ptrdiff_t>(n);
  out.match_count.assign(table.match_count.begin() + begin, table.match_count.begin() + end);
  out.thread_count.assign(table.thread_count.begin() + begin, table.thread_count.begin() + end);
  return out;
}

void write_series_csv(std::ostream& out, const SeriesTable& table) {
  out << kSeriesCsvHeader << '\n';
  // CSV column order interleaves mean/std per dimension.
  constexpr std::size_t kColumnChannel[6] = {0, 3, 1, 4, 2, 5};
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.channels.front().month_at(i).str();
    for (std::size_t c : kColumnChannel) out << ',' << field(table.channels[c].values[i]);
    out << ',' << table.match_count[i] << ',' << table.thread_count[i] << '\n';
  }
}

SeriesTable read_series_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  SeriesTable table;
  table.channels.resize(6);
  for (std::size_t c = 0; c < 6; ++c) table.channels[c].name = kChannelNames[c];
  constexpr std::size_t kColumnChannel[6] = {0, 3, 1, 4, 2, 5};

  while (detail::read_line(in, line)) {
    ++line_no;
    std::string_view text = detail::trim(line);
    if (text.empty()) continue;
    if (!have_header) {
      if (text != kSeriesCsvHeader) throw InputError("series line " + std::to_string(line_no) + ": unexpected header");
      have_header = true;
      continue;
    }
    const std::string where = "series line " + std::to_string(line_no);
    const auto fields = detail::split_fields(text);
    if (fields.size() != 9) throw InputError(where + ": expected 9 fields");
    Month month;
    try {
      month = Month::parse(fields[0]);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    if (table.match_count.empty()) {
      for (auto& ch : table.channels) ch.first_month = month;
    } else if (month != table.channels.front().month_at(table.match_count.size())) {
      throw InputError(where + ": month " + month.str() + " breaks the contiguous axis");
    }
    for (std::size_t k = 0; k < 6; ++k) {
      const std::string_view f = fields[1 + k];
      double v = kMissing;
      if (!f.empty()) {
        const auto parsed = detail::parse_double(f);
        if (!parsed) throw InputError(where + ": non-numeric value '" + std::string(f) + "'");
        v = *parsed;
      }
      table.channels[kColumnChannel[k]].values.push_back(v);
    }
    const auto matches = detail::parse_integer(fields[7]);
    const auto threads = detail::parse_integer(fields[8]);
    if (!matches || !threads) throw InputError(where + ": non-integer count");
    table.match_count.push_back(*matches);
    table.thread_count.push_back(*threads);
  }
  if (table.match_count.empty()) throw InputError("series file has no rows");
  return table;
}

void write_attitude_csv(std::ostream& out, const NumericSeries& series) {
  out << "month,rate\n";
  for (std::size_t i = 0; i < series.size(); ++i) out << series.month_at(i).str() << ',' << field(series.values[i]) << '\n';
}

void write_discussions_csv(std::ostream& out, const std::vector<MonthlyBucket>& buckets) {
  out << "month,thread_count\n";
  for (const auto& b : buckets) out << b.month.str() << ',' << b.thread_count << '\n';
}

void write_threads_csv(std::ostream& out, const std::vector<ThreadSummary>& threads) {
  out << "thread_id,first_month,message_count,participant_count,subject\n";
  for (const auto& t : threads) {
    std::string subject = t.subject;
    std::replace(subject.begin(), subject.end(), '"', '\'');
    out << t.thread_id << ',' << t.first_month.str() << ',' << t.message_count << ',' << t.participant_count << ",\""
        << subject << "\"\n";
  }
}

void write_buckets_jsonl(std::ostream& out, const std::vector<MonthlyBucket>& buckets) {
  for (const auto& b : buckets) {
    Json counts = Json::object();
    for (const auto& [word, n] : b.token_counts) counts[word] = n;
    Json obj{{"month", b.month.str()}, {"thread_count", b.thread_count}, {"token_counts", std::move(counts)}};
    out << obj.dump() << '\n';
  }
}

std::vector<MonthlyBucket> read_buckets_jsonl(std::istream& in) {
  std::vector<MonthlyBucket> buckets;
  std::string line;
  std::size_t line_no = 0;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const std::string where = "buckets line " + std::to_string(line_no);
    try {
      const Json obj = Json::parse(line);
      MonthlyBucket b;
      b.month = Month::parse(obj.at("month").get<std::string>());
      b.thread_count = obj.at("thread_count").get<std::int64_t>();
      for (const auto& [word, n] : obj.at("token_counts").items()) {
        const auto count = n.get<std::int64_t>();
        if (count < 1) throw InputError("count for '" + word + "' must be positive");
        b.token_counts.emplace(word, count);
      }
      if (!buckets.empty() && b.month != buckets.back().month + 1) {
        throw InputError("month " + b.month.str() + " breaks the contiguous axis");
      }
      buckets.push_back(std::move(b));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(where + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return buckets;
}

void write_top_words_csv(std::ostream& out, const std::vector<TopWordsPeriod>& periods) {
  out << "period_start,period_end,rank,word,occurrences,display_weight\n";
  for (const auto& p : periods) {
    for (std::size_t i = 0; i < p.words.size(); ++i) {
      const auto& w = p.words[i];
      out << p.period.first.str() << ',' << p.period.last.str() << ',' << (i + 1) << ',' << w.word << ','
          << w.occurrences << ',' << detail::format_double(w.display_weight) << '\n';
    }
  }
}

void write_correlation_csv(std::ostream& out, const CorrelationTrack& track) {
  out << kCorrelationCsvHeader << '\n';
  for (const auto& pt : track.points) {
    out << pt.month.str() << ',' << (pt.r ? detail::format_double(*pt.r) : "") << ',' << pt.n_window << ','
        << (pt.p_value ? detail::format_double(*pt.p_value) : "") << ',' << (pt.significant ? "true" : "false") << '\n';
  }
}

namespace {

Json model_json(const SuiteEntry& entry, bool holdout) {
  const ArmaModel& m = entry.model;
  const EvaluationReport& r = entry.report;
  Json b = Json::array();
  for (const auto& row : m.exo) b.push_back(number_array(row));
  Json months = Json::array();
  for (Month mo = r.evaluated.first; mo <= r.evaluated.last; ++mo) months.push_back(mo.str());

  Json obj;
  obj["name"] = entry.name;
  obj["mode"] = holdout ? "holdout" : "in-sample";
  obj["spec"] = Json{{"p", m.spec.p},
                     {"q", m.spec.q},
                     {"exogenous", m.spec.exogenous_names},
                     {"intercept", m.spec.include_intercept}};
  obj["coefficients"] = Json{{"A", number_array(m.ar)}, {"B", std::move(b)}, {"intercept", m.intercept}};
  obj["rank"] = m.rank;
  obj["warnings"] = m.warnings;
  obj["training_months"] = month_range_json(m.training);
  obj["sse"] = m.sse;
  obj["mae"] = r.mae;
  obj["evaluated_months"] = month_range_json(r.evaluated);
  obj["months"] = std::move(months);
  obj["actual"] = number_array(r.actual);
  obj["predicted"] = number_array(r.predicted);
  obj["errors"] = number_array(r.errors);
  obj["cumulative"] = number_array(r.cumulative);
  return obj;
}

}  // namespace

std::string model_report_json(const SuiteEntry& entry, bool holdout) { return model_json(entry, holdout).dump(2) + "\n"; }

std::string suite_report_json(std::span<const SuiteEntry> entries) {
  Json models = Json::array();
  for (const auto& e : entries) models.push_back(model_json(e, false));
  Json obj;
  obj["models"] = std::move(models);
  return obj.dump(2) + "\n";
}

std::vector<ModelSummary> read_suite_summary(std::istream& in) {
  try {
    const Json obj = Json::parse(in);
    std::vector<ModelSummary> out;
    for (const auto& m : obj.at("models")) {
      out.push_back({m.at("name").get<std::string>(), m.at("mae").get<double>(), m.at("sse").get<double>(),
                     m.at("warnings").get<std::vector<std::string>>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model report: ") + e.what());
  }
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw PreconditionError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = prob * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::string surrogate_report_json(const SurrogateReport& report, const std::string& model, bool include_all) {
  Json obj;
  obj["model"] = model;
  obj["seed"] = report.seed;
  obj["n_surrogates"] = report.n_surrogates;
  obj["empirical_mae"] = report.empirical_mae;
  obj["at_or_below"] = report.at_or_below;
  obj["p_hat"] = report.p_hat;
  const auto& s = report.surrogate_maes;
  obj["surrogate_mae_quantiles"] = Json{{"min", quantile(s, 0.0)},  {"q05", quantile(s, 0.05)},
                                        {"q25", quantile(s, 0.25)}, {"median", quantile(s, 0.5)},
                                        {"q75", quantile(s, 0.75)}, {"q95", quantile(s, 0.95)},
                                        {"max", quantile(s, 1.0)}};
  if (include_all) obj["surrogate_maes"] = number_array(s);
  return obj.dump(2) + "\n";
}

SurrogateSummary read_surrogate_summary(std::istream& in) {
  try {
    const Json obj = Json::parse(in);
    return {obj.at("model").get<std::string>(), obj.at("seed").get<std::uint64_t>(), obj.at("n_surrogates").get<int>(),
            obj.at("empirical_mae").get<double>(), obj.at("p_hat").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("surrogate report: ") + e.what());
  }
}

}  // namespace affect
