// Writes the synthetic fixture corpus: lexicon.csv, messages.jsonl and
// approval.csv. Output is a pure function of --seed.
//
// Thread subjects are drawn from the lexicon with a month-dependent lean
// towards high-arousal words; the attitude series is then driven by the
// scored arousal of those subjects two months earlier, so the mean/std
// arousal models have real signal to find.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "affect/analysis.hpp"
#include "affect/emotion.hpp"
#include "affect/ingest.hpp"
#include "affect/lexicon.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

// Synthetic scores, except war and love which carry published norms.
const std::vector<affect::LexiconEntry> kLexicon = {
    {"war", 2.08, 7.49, 6.38},      {"love", 8.72, 6.44, 6.93},     {"attack", 2.25, 7.10, 4.10},
    {"bomb", 2.10, 7.20, 3.90},     {"crisis", 2.40, 6.90, 3.70},   {"terror", 1.80, 7.60, 3.10},
    {"riot", 2.50, 6.95, 4.20},     {"scandal", 3.10, 6.10, 4.60},  {"fraud", 2.70, 5.90, 4.40},
    {"panic", 2.60, 7.30, 3.30},    {"fury", 2.90, 7.40, 5.20},     {"threat", 2.40, 6.60, 3.90},
    {"protest", 4.10, 6.20, 5.60},  {"victory", 8.00, 6.60, 7.40},  {"rescue", 7.20, 6.50, 6.10},
    {"party", 7.80, 6.70, 6.20},    {"storm", 4.00, 6.00, 4.70},    {"danger", 2.90, 7.00, 4.00},
    {"peace", 7.70, 2.90, 6.10},    {"calm", 6.90, 2.50, 6.60},     {"garden", 6.70, 3.60, 6.30},
    {"quiet", 5.90, 2.80, 5.70},    {"rest", 7.10, 2.60, 6.20},     {"home", 7.80, 4.10, 6.90},
    {"book", 5.70, 4.10, 6.10},     {"river", 6.80, 4.50, 5.80},    {"tea", 6.10, 3.30, 6.00},
    {"farm", 5.50, 3.90, 5.90},     {"library", 5.90, 3.20, 6.20},  {"sunday", 6.60, 3.50, 6.20},
    {"budget", 4.90, 4.40, 5.20},   {"tax", 3.70, 4.90, 4.60},      {"school", 5.80, 4.70, 5.40},
    {"health", 6.90, 4.60, 6.40},   {"job", 5.60, 4.90, 5.60},      {"vote", 6.00, 5.20, 6.50},
    {"court", 4.60, 5.10, 4.90},    {"oil", 4.50, 4.80, 5.10},      {"market", 5.40, 5.00, 5.50},
    {"debate", 5.10, 5.40, 5.80},
};

const std::vector<std::string> kFiller = {"the", "about", "news", "today", "question", "thoughts", "again", "new",
                                          "report", "anyone", "opinion", "update", "plan", "story", "why", "what"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic fixture corpus"};
  fs::path out = "data/fixture";
  std::uint64_t seed = 2005;
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const affect::Month first(1999, 9);
  constexpr int kMonths = 66;

  std::vector<std::string> hot, cool;
  for (const auto& e : kLexicon) (e.arousal >= 5.9 ? hot : cool).push_back(e.word);
  std::sort(hot.begin(), hot.end());
  std::sort(cool.begin(), cool.end());

  // Latent lean towards high-arousal vocabulary, an AR(1) in logit space.
  std::vector<double> lean(kMonths);
  double z = 0.0;
  for (int t = 0; t < kMonths; ++t) {
    z = 0.8 * z + 0.9 * normal(rng);
    lean[t] = 1.0 / (1.0 + std::exp(-z));
  }

  const std::vector<std::string> groups = {"alt.politics", "talk.politics.misc", "soc.culture.usa"};
  std::vector<nlohmann::ordered_json> messages;
  int thread_no = 0;
  int message_no = 0;
  for (int t = 0; t < kMonths; ++t) {
    const affect::Month month = first + t;
    const int n_threads = 6 + static_cast<int>(unit(rng) * 6);
    for (int k = 0; k < n_threads; ++k) {
      const std::string thread_id = "t" + std::to_string(++thread_no);
      std::vector<std::string> words;
      const int n_words = 2 + static_cast<int>(unit(rng) * 4);
      for (int w = 0; w < n_words; ++w) {
        if (w > 0 && unit(rng) < 0.35) {
          words.push_back(kFiller[static_cast<std::size_t>(unit(rng) * kFiller.size())]);
          continue;
        }
        const auto& pool = unit(rng) < lean[t] ? hot : cool;
        words.push_back(pool[static_cast<std::size_t>(unit(rng) * pool.size())]);
      }
      std::string subject;
      for (std::size_t w = 0; w < words.size(); ++w) {
        std::string word = words[w];
        if (w == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
        subject += (w ? " " : "") + word;
      }
      // Short threads (spam-like) fall below the three-message filter.
      const int size = unit(rng) < 0.25 ? 1 + static_cast<int>(unit(rng) * 2) : 3 + static_cast<int>(unit(rng) * 9);
      const std::string group = groups[static_cast<std::size_t>(unit(rng) * groups.size())];
      // Minutes since the start of the month; replies follow the opener.
      int minute_of_month = static_cast<int>(unit(rng) * 20 * 1440);
      for (int i = 0; i < size; ++i) {
        if (i > 0) minute_of_month = std::min(28 * 1440 - 1, minute_of_month + 10 + static_cast<int>(unit(rng) * 600));
        char ts[32];
        std::snprintf(ts, sizeof ts, "%04d-%02u-%02dT%02d:%02d:%02dZ", month.year(), month.month(),
                      1 + minute_of_month / 1440, minute_of_month / 60 % 24, minute_of_month % 60, i % 60);
        nlohmann::ordered_json msg;
        msg["message_id"] = "<m" + std::to_string(++message_no) + "@fixture.invalid>";
        msg["thread_id"] = thread_id;
        msg["group"] = group;
        msg["timestamp"] = std::string(ts);
        msg["subject"] = i == 0 ? subject : (i % 4 == 3 ? "RE: Re: " : "Re: ") + subject;
        msg["author"] = "user" + std::to_string(1 + static_cast<int>(unit(rng) * 40));
        messages.push_back(std::move(msg));
      }
    }
  }
  // Archives are roughly chronological.
  std::stable_sort(messages.begin(), messages.end(), [](const auto& a, const auto& b) {
    return a["timestamp"].template get<std::string>() < b["timestamp"].template get<std::string>();
  });

  // Score the corpus exactly as the pipeline will, then drive approval from
  // the mean arousal two months earlier.
  std::ostringstream jsonl;
  for (const auto& m : messages) jsonl << m.dump() << '\n';
  std::istringstream jsonl_in(jsonl.str());
  const auto records = affect::parse_messages(jsonl_in);
  const auto kept = affect::filter_threads(affect::build_threads(records), 3);
  const auto buckets = affect::monthly_subject_buckets(kept);
  const affect::Lexicon lexicon(kLexicon);
  const auto series = affect::build_series(buckets, lexicon);
  if (series.months.size() != kMonths) {
    std::cerr << "generator produced " << series.months.size() << " months, expected " << kMonths << '\n';
    return 1;
  }
  std::vector<double> arousal(kMonths);
  double mean_arousal = 0.0;
  for (int t = 0; t < kMonths; ++t) {
    const auto& a = series.months[static_cast<std::size_t>(t)][affect::Dimension::kArousal].mean;
    if (!a) {
      std::cerr << "month " << (first + t).str() << " has no lexicon match\n";
      return 1;
    }
    arousal[t] = *a;
    mean_arousal += *a / kMonths;
  }
  std::vector<double> approval(kMonths);
  double x = 58.0;
  for (int t = 0; t < kMonths; ++t) {
    const double drive = t >= 2 ? arousal[t - 2] - mean_arousal : 0.0;
    x = 58.0 + 0.85 * (x - 58.0) + 6.0 * drive + 0.4 * normal(rng);
    approval[t] = std::round(std::clamp(x, 0.0, 100.0) * 10.0) / 10.0;
  }

  fs::create_directories(out);
  {
    std::ofstream f(out / "lexicon.csv", std::ios::binary);
    f << "word,valence,arousal,dominance\n";
    for (const auto& e : kLexicon) {
      char line[96];
      std::snprintf(line, sizeof line, "%s,%.2f,%.2f,%.2f\n", e.word.c_str(), e.valence, e.arousal, e.dominance);
      f << line;
    }
  }
  {
    std::ofstream f(out / "messages.jsonl", std::ios::binary);
    f << jsonl.str();
  }
  {
    std::ofstream f(out / "approval.csv", std::ios::binary);
    f << "month,rate\n";
    for (int t = 0; t < kMonths; ++t) {
      char line[48];
      std::snprintf(line, sizeof line, "%s,%.1f\n", (first + t).str().c_str(), approval[t]);
      f << line;
    }
  }
  std::cout << messages.size() << " messages, " << kept.size() << " threads kept, " << kMonths << " months -> "
            << out.string() << '\n';
  return 0;
}
