#include "affect/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "affect/errors.hpp"
#include "affect/version.hpp"
#include "json.hpp"
#include "text_util.hpp"

namespace affect {
namespace fs = std::filesystem;
namespace {

using Json = nlohmann::ordered_json;

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

std::string read_file(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes artifacts below one root and remembers their digests.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

  void write(const fs::path& relative, const std::string& content) {
    const fs::path full = root_ / relative;
    fs::create_directories(full.parent_path());
    std::ofstream out(full, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + full.string() + "'");
    out << content;
    out.close();
    if (!out) throw std::runtime_error("failed writing '" + full.string() + "'");
    written_.emplace_back(relative, sha256_hex(content));
  }

  template <typename Fn>
  void write_with(const fs::path& relative, Fn&& fn) {
    std::ostringstream ss;
    fn(ss);
    write(relative, ss.str());
  }

  const std::vector<std::pair<fs::path, std::string>>& written() const { return written_; }

 private:
  fs::path root_;
  std::vector<std::pair<fs::path, std::string>> written_;
};

// Runs `fn` as stage `stage`, translating exceptions into StageError.
template <typename Fn>
auto in_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, exit_code_for(e), e.what());
  }
}

NumericSeries attitude_series_from(const fs::path& path) { return to_series(read_attitude_file(path)); }

PreparedSeries load_prepared(const fs::path& series, const fs::path& attitude, GapPolicy policy) {
  const SeriesTable table = in_stage("load-series", [&] { return read_series_file(series); });
  const NumericSeries att = in_stage("load-attitude", [&] { return attitude_series_from(attitude); });
  return in_stage("gaps", [&] { return prepare_series(table, att, policy); });
}

void write_correlations(ArtifactWriter& writer, const fs::path& dir, const std::vector<CorrelationTrack>& tracks) {
  for (const auto& track : tracks) {
    writer.write_with(dir / correlation_file_name(track), [&](std::ostream& os) { write_correlation_csv(os, track); });
  }
}

Json config_json(const PipelineConfig& c) {
  return Json{{"lexicon", c.lexicon.string()},
              {"messages", c.messages.string()},
              {"attitude", c.attitude.string()},
              {"out", c.out.string()},
              {"min_messages", c.min_messages},
              {"smooth_window", c.smooth_window},
              {"corr_window", c.corr_window},
              {"alpha", c.alpha},
              {"p", c.p},
              {"q", c.q},
              {"n_surrogates", c.n_surrogates},
              {"seed", c.seed},
              {"gap_policy", std::string(gap_policy_name(c.gap_policy))},
              {"surrogate_model", c.surrogate_model},
              {"all_surrogate_maes", c.all_surrogate_maes},
              {"workers", c.workers}};
}

}  // namespace

std::string_view gap_policy_name(GapPolicy policy) {
  return policy == GapPolicy::kFail ? "fail" : "linear-interpolate";
}

GapPolicy parse_gap_policy(std::string_view name) {
  if (name == "fail") return GapPolicy::kFail;
  if (name == "linear-interpolate") return GapPolicy::kLinearInterpolate;
  throw PreconditionError("unknown gap policy '" + std::string(name) + "' (expected fail or linear-interpolate)");
}

int exit_code_for(const std::exception& e) {
  if (const auto* stage = dynamic_cast<const StageError*>(&e)) return stage->exit_code();
  if (dynamic_cast<const InputError*>(&e) != nullptr) return kExitInput;
  if (dynamic_cast<const PreconditionError*>(&e) != nullptr) return kExitPrecondition;
  return kExitInternal;
}

Lexicon read_lexicon_file(const fs::path& path) {
  std::ifstream in = open_input(path);
  return load_lexicon(in);
}

AttitudeSeries read_attitude_file(const fs::path& path) {
  std::ifstream in = open_input(path);
  return load_attitude_series(in);
}

SeriesTable read_series_file(const fs::path& path) {
  std::ifstream in = open_input(path);
  return read_series_csv(in);
}

std::vector<MonthlyBucket> read_buckets_file(const fs::path& path) {
  std::ifstream in = open_input(path);
  auto buckets = read_buckets_jsonl(in);
  if (buckets.empty()) throw InputError("'" + path.string() + "' holds no buckets");
  return buckets;
}

IngestResult ingest_messages(const fs::path& messages, std::int64_t min_messages) {
  std::ifstream in = open_input(messages);
  const auto records = parse_messages(in);
  IngestResult result;
  result.threads = build_threads(records);
  result.kept = filter_threads(result.threads, min_messages);
  if (result.kept.empty()) {
    throw PreconditionError("no thread has at least " + std::to_string(min_messages) + " messages");
  }
  result.buckets = monthly_subject_buckets(result.kept);
  return result;
}

std::vector<TopWordsPeriod> yearly_top_words(const std::vector<MonthlyBucket>& buckets, const Lexicon& lexicon,
                                             std::int64_t k) {
  std::vector<TopWordsPeriod> periods;
  if (buckets.empty()) return periods;
  const Month last = buckets.back().month;
  for (Month start = buckets.front().month; start <= last; start = start + 12) {
    const MonthRange period{start, std::min(start + 11, last)};
    periods.push_back({period, top_lexicon_words(buckets, lexicon, period, k)});
  }
  return periods;
}

std::vector<NumericSeries> PreparedSeries::all() const {
  std::vector<NumericSeries> out = channels;
  out.push_back(attitude);
  return out;
}

PreparedSeries prepare_series(const SeriesTable& table, const NumericSeries& attitude, GapPolicy policy) {
  PreparedSeries prepared;
  std::vector<NumericSeries> series;
  for (const auto& channel : table.channels) {
    if (const auto gap = first_gap(channel)) {
      if (policy == GapPolicy::kFail) {
        throw PreconditionError("gap policy 'fail': series '" + channel.name + "' is missing at " + gap->str() +
                                " (no lexicon matches); rerun with --gap-policy linear-interpolate to fill it");
      }
      const auto missing = std::count_if(channel.values.begin(), channel.values.end(), is_missing);
      prepared.notes.push_back("interpolated " + std::to_string(missing) + " missing month(s) in '" + channel.name +
                               "'");
      series.push_back(interpolate_gaps(channel));
    } else {
      series.push_back(channel);
    }
  }
  if (const auto gap = first_gap(attitude)) {
    throw PreconditionError("attitude series is missing at " + gap->str());
  }
  series.push_back(attitude);
  auto aligned = align(series);
  prepared.attitude = std::move(aligned.back());
  aligned.pop_back();
  prepared.channels = std::move(aligned);
  return prepared;
}

PreparedSeries smooth_series(const PreparedSeries& series, int window_len) {
  PreparedSeries out;
  out.notes = series.notes;
  for (const auto& channel : series.channels) out.channels.push_back(hamming_smooth(channel, window_len));
  out.attitude = hamming_smooth(series.attitude, window_len);
  return out;
}

std::vector<CorrelationTrack> correlation_matrix(const PreparedSeries& series, int window, double alpha) {
  const auto all = series.all();
  std::vector<CorrelationTrack> tracks;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) tracks.push_back(rolling_correlation(all[i], all[j], window, alpha));
  }
  return tracks;
}

std::string correlation_file_name(const CorrelationTrack& track) { return track.x_name + "__" + track.y_name + ".csv"; }

std::string best_exogenous_model(std::span<const SuiteEntry> entries) {
  const SuiteEntry* best = nullptr;
  for (const auto& e : entries) {
    if (e.model.spec.m() == 0) continue;
    if (best == nullptr || e.report.mae < best->report.mae) best = &e;
  }
  if (best == nullptr) throw PreconditionError("suite has no model with exogenous inputs");
  return best->name;
}

void run_ingest_command(const fs::path& messages, std::int64_t min_messages, const fs::path& out) {
  const IngestResult result = in_stage("ingest", [&] { return ingest_messages(messages, min_messages); });
  in_stage("write", [&] {
    ArtifactWriter writer(out);
    writer.write_with("threads.csv", [&](std::ostream& os) { write_threads_csv(os, result.kept); });
    writer.write_with("buckets.jsonl", [&](std::ostream& os) { write_buckets_jsonl(os, result.buckets); });
    writer.write_with("discussions.csv", [&](std::ostream& os) { write_discussions_csv(os, result.buckets); });
  });
}

void run_score_command(const fs::path& lexicon, const fs::path& buckets, const fs::path& out) {
  const Lexicon lex = in_stage("load-lexicon", [&] { return read_lexicon_file(lexicon); });
  const auto bk = in_stage("load-buckets", [&] { return read_buckets_file(buckets); });
  const EmotionSeries series = in_stage("score", [&] { return build_series(bk, lex); });
  const auto top = in_stage("score", [&] { return yearly_top_words(bk, lex); });
  in_stage("write", [&] {
    ArtifactWriter writer(out);
    writer.write_with("emotion_series.csv", [&](std::ostream& os) { write_series_csv(os, to_table(series)); });
    writer.write_with("top_words.csv", [&](std::ostream& os) { write_top_words_csv(os, top); });
  });
}

void run_smooth_command(const fs::path& series, const fs::path& attitude, int smooth_window, GapPolicy policy,
                        const fs::path& out) {
  const SeriesTable table = in_stage("load-series", [&] { return read_series_file(series); });
  const NumericSeries att = in_stage("load-attitude", [&] { return attitude_series_from(attitude); });
  const PreparedSeries prepared = in_stage("gaps", [&] { return prepare_series(table, att, policy); });
  const PreparedSeries smoothed = in_stage("smooth", [&] { return smooth_series(prepared, smooth_window); });
  in_stage("write", [&] {
    ArtifactWriter writer(out);
    writer.write_with("emotion_series_smoothed.csv",
                      [&](std::ostream& os) { write_series_csv(os, with_channels(table, smoothed.channels)); });
    writer.write_with("attitude_smoothed.csv", [&](std::ostream& os) { write_attitude_csv(os, smoothed.attitude); });
  });
}

void run_correlate_command(const fs::path& series, const fs::path& attitude, int window, double alpha,
                           GapPolicy policy, const std::string& label, const fs::path& out) {
  const PreparedSeries prepared = load_prepared(series, attitude, policy);
  const auto tracks = in_stage("correlate", [&] { return correlation_matrix(prepared, window, alpha); });
  in_stage("write", [&] {
    ArtifactWriter writer(out);
    write_correlations(writer, fs::path("correlations") / label, tracks);
  });
}

void run_forecast_command(const fs::path& series, const fs::path& attitude, const std::string& model, int p, int q,
                          int holdout, const fs::path& out) {
  const PreparedSeries prepared = load_prepared(series, attitude, GapPolicy::kFail);
  const SuiteEntry entry = in_stage("forecast", [&] {
    return holdout > 0 ? run_suite_model_holdout(model, prepared.attitude, prepared.channels, holdout, p, q)
                       : run_suite_model(model, prepared.attitude, prepared.channels, p, q);
  });
  in_stage("write", [&] {
    ArtifactWriter writer(out);
    const std::string name = "model_" + model + (holdout > 0 ? "_holdout" : "") + ".json";
    writer.write(name, model_report_json(entry, holdout > 0));
  });
}

void run_suite_command(const fs::path& series, const fs::path& attitude, int p, int q, const fs::path& out) {
  const PreparedSeries prepared = load_prepared(series, attitude, GapPolicy::kFail);
  const auto entries = in_stage("forecast", [&] { return model_suite(prepared.attitude, prepared.channels, p, q); });
  in_stage("write", [&] {
    ArtifactWriter writer(out);
    writer.write("models.json", suite_report_json(entries));
  });
}

void run_surrogate_command(const fs::path& series, const fs::path& attitude, const std::string& model,
                           const PipelineConfig& config) {
  const PreparedSeries prepared = load_prepared(series, attitude, GapPolicy::kFail);
  const std::string chosen = model.empty() ? in_stage("forecast", [&] {
    return best_exogenous_model(model_suite(prepared.attitude, prepared.channels, config.p, config.q));
  })
                                           : model;
  const SurrogateReport report = in_stage("surrogate", [&] {
    const ArmaSpec spec = suite_spec(chosen, config.p, config.q);
    std::vector<NumericSeries> inputs;
    for (const auto& name : spec.exogenous_names) {
      inputs.push_back(*std::find_if(prepared.channels.begin(), prepared.channels.end(),
                                     [&](const NumericSeries& s) { return s.name == name; }));
    }
    return surrogate_test(spec, prepared.attitude, inputs, config.n_surrogates, config.seed, config.workers);
  });
  in_stage("write", [&] {
    ArtifactWriter writer(config.out);
    writer.write("surrogate.json", surrogate_report_json(report, chosen, config.all_surrogate_maes));
  });
}

std::string run_report_command(const fs::path& dir) {
  const auto models = in_stage("report", [&] {
    std::ifstream in = open_input(dir / "models.json");
    return read_suite_summary(in);
  });
  std::optional<SurrogateSummary> surrogate;
  if (fs::exists(dir / "surrogate.json")) {
    surrogate = in_stage("report", [&] {
      std::ifstream in = open_input(dir / "surrogate.json");
      return read_surrogate_summary(in);
    });
  }

  const auto ar = std::find_if(models.begin(), models.end(), [](const ModelSummary& m) { return m.name == "ar"; });
  std::ostringstream csv;
  std::ostringstream text;
  csv << "model,mae,sse,mae_change_vs_ar\n";
  text << std::left << std::setw(16) << "model" << std::right << std::setw(12) << "MAE" << std::setw(14) << "vs AR"
       << '\n';
  for (const auto& m : models) {
    std::string change;
    if (ar != models.end() && ar->mae > 0.0) change = detail::format_double((m.mae - ar->mae) / ar->mae);
    csv << m.name << ',' << detail::format_double(m.mae) << ',' << detail::format_double(m.sse) << ',' << change << '\n';
    text << std::left << std::setw(16) << m.name << std::right << std::fixed << std::setprecision(4) << std::setw(12)
         << m.mae;
    if (!change.empty()) text << std::setw(13) << std::setprecision(1) << 100.0 * (m.mae - ar->mae) / ar->mae << '%';
    text << '\n';
  }
  if (surrogate) {
    text << "\nsurrogate test (" << surrogate->model << ", n=" << surrogate->n_surrogates << ", seed=" << surrogate->seed
         << "): empirical MAE " << std::setprecision(4) << surrogate->empirical_mae << ", p_hat "
         << std::setprecision(3) << surrogate->p_hat << '\n';
  }
  in_stage("write", [&] {
    ArtifactWriter writer(dir);
    writer.write("mae_summary.csv", csv.str());
  });
  return text.str();
}

RunResult run_pipeline(const PipelineConfig& config) {
  const std::string started = utc_now();
  const fs::path marker = config.out / ".failed";
  try {
    fs::create_directories(config.out);
    fs::remove(marker);
  } catch (const fs::filesystem_error& e) {
    throw StageError("setup", kExitInput, e.what());
  }

  RunResult result;
  try {
    ArtifactWriter writer(config.out);

    const Lexicon lexicon = in_stage("load-lexicon", [&] { return read_lexicon_file(config.lexicon); });
    const NumericSeries attitude = in_stage("load-attitude", [&] { return attitude_series_from(config.attitude); });
    const IngestResult ingest = in_stage("ingest", [&] { return ingest_messages(config.messages, config.min_messages); });
    in_stage("write", [&] {
      writer.write_with("threads.csv", [&](std::ostream& os) { write_threads_csv(os, ingest.kept); });
      writer.write_with("buckets.jsonl", [&](std::ostream& os) { write_buckets_jsonl(os, ingest.buckets); });
      writer.write_with("discussions.csv", [&](std::ostream& os) { write_discussions_csv(os, ingest.buckets); });
    });

    const EmotionSeries emotion = in_stage("score", [&] { return build_series(ingest.buckets, lexicon); });
    const SeriesTable table = to_table(emotion);
    const auto top = in_stage("score", [&] { return yearly_top_words(ingest.buckets, lexicon); });
    in_stage("write", [&] {
      writer.write_with("emotion_series.csv", [&](std::ostream& os) { write_series_csv(os, table); });
      writer.write_with("top_words.csv", [&](std::ostream& os) { write_top_words_csv(os, top); });
    });

    const PreparedSeries raw = in_stage("gaps", [&] { return prepare_series(table, attitude, config.gap_policy); });
    const PreparedSeries smoothed = in_stage("smooth", [&] { return smooth_series(raw, config.smooth_window); });
    result.warnings.insert(result.warnings.end(), raw.notes.begin(), raw.notes.end());
    in_stage("write", [&] {
      writer.write_with("emotion_series_smoothed.csv",
                        [&](std::ostream& os) { write_series_csv(os, with_channels(table, smoothed.channels)); });
      writer.write_with("attitude_smoothed.csv", [&](std::ostream& os) { write_attitude_csv(os, smoothed.attitude); });
    });

    in_stage("correlate", [&] {
      write_correlations(writer, "correlations/raw", correlation_matrix(raw, config.corr_window, config.alpha));
      write_correlations(writer, "correlations/smoothed",
                         correlation_matrix(smoothed, config.corr_window, config.alpha));
    });

    const auto suite = in_stage("forecast", [&] {
      return model_suite(smoothed.attitude, smoothed.channels, config.p, config.q);
    });
    for (const auto& e : suite) {
      for (const auto& w : e.model.warnings) result.warnings.push_back(e.name + ": " + w);
    }
    in_stage("write", [&] { writer.write("models.json", suite_report_json(suite)); });

    result.surrogate_model = config.surrogate_model.empty() ? best_exogenous_model(suite) : config.surrogate_model;
    const SurrogateReport surrogate = in_stage("surrogate", [&] {
      const ArmaSpec spec = suite_spec(result.surrogate_model, config.p, config.q);
      std::vector<NumericSeries> inputs;
      for (const auto& name : spec.exogenous_names) {
        inputs.push_back(*std::find_if(smoothed.channels.begin(), smoothed.channels.end(),
                                       [&](const NumericSeries& s) { return s.name == name; }));
      }
      return surrogate_test(spec, smoothed.attitude, inputs, config.n_surrogates, config.seed, config.workers);
    });
    in_stage("write", [&] {
      writer.write("surrogate.json",
                   surrogate_report_json(surrogate, result.surrogate_model, config.all_surrogate_maes));
    });

    in_stage("manifest", [&] {
      Json inputs = Json::object();
      for (const auto& [key, path] : {std::pair{"lexicon", config.lexicon}, std::pair{"messages", config.messages},
                                      std::pair{"attitude", config.attitude}}) {
        inputs[key] = Json{{"path", path.string()}, {"sha256", sha256_hex(read_file(path))}};
      }
      Json artifacts = Json::array();
      for (const auto& [path, digest] : writer.written()) {
        artifacts.push_back(Json{{"path", path.generic_string()}, {"sha256", digest}});
        result.artifacts.push_back(path);
      }
      Json manifest;
      manifest["tool"] = "affect";
      manifest["version"] = kVersion;
      manifest["started_at"] = started;
      manifest["finished_at"] = utc_now();
      manifest["config"] = config_json(config);
      manifest["inputs"] = std::move(inputs);
      manifest["summary"] = Json{{"threads_total", ingest.threads.size()},
                                 {"threads_kept", ingest.kept.size()},
                                 {"months", emotion.size()},
                                 {"analysis_months", {{"first", smoothed.attitude.range().first.str()},
                                                      {"last", smoothed.attitude.range().last.str()}}},
                                 {"best_model", best_exogenous_model(suite)},
                                 {"surrogate_model", result.surrogate_model},
                                 {"surrogate_p_hat", surrogate.p_hat}};
      manifest["warnings"] = result.warnings;
      manifest["artifacts"] = std::move(artifacts);
      writer.write("manifest.json", manifest.dump(2) + "\n");
    });
  } catch (const StageError& e) {
    std::ofstream(marker) << e.what() << '\n';
    throw;
  } catch (const std::exception& e) {
    std::ofstream(marker) << e.what() << '\n';
    throw StageError("internal", kExitInternal, e.what());
  }
  return result;
}

}  // namespace affect
