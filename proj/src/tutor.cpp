#include "wordlab/tutor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "wordlab/errors.hpp"

namespace wordlab {

Lexicon generate_lexicon(uint32_t m, uint32_t n, double sensitivity_p,
                         uint64_t seed) {
  if (m < 1) throw parameter_error("generate_lexicon: word count must be >= 1");
  if (n < 1) throw parameter_error("generate_lexicon: dimensions must be >= 1");
  if (!(sensitivity_p > 0.0) || sensitivity_p > 1.0) {
    throw parameter_error("generate_lexicon: sensitivity_p must be in (0,1]");
  }

  Rng rng(seed);
  Lexicon lex;
  lex.n = n;
  lex.sensitivity_p = sensitivity_p;
  lex.rng_seed = seed;
  lex.words.reserve(m);

  for (uint32_t id = 0; id < m; ++id) {
    WordEntry entry;
    entry.word_id = id;
    entry.prototype.resize(n);
    entry.weight.resize(n);
    for (uint32_t j = 0; j < n; ++j) entry.prototype[j] = rng.uniform01();
    bool any = false;
    for (uint32_t j = 0; j < n; ++j) {
      entry.weight[j] = rng.bernoulli(sensitivity_p) ? 1 : 0;
      any |= entry.weight[j] != 0;
    }
    if (!any) {
      entry.weight[rng.uniform_below(n)] = 1;
    }
    lex.words.push_back(std::move(entry));
  }
  return lex;
}

double weighted_distance(const WordEntry& entry,
                         std::span<const double> object) {
  if (object.size() != entry.prototype.size()) {
    throw shape_error("weighted_distance: object has " +
                      std::to_string(object.size()) + " dims, entry has " +
                      std::to_string(entry.prototype.size()));
  }
  double sum = 0.0;
  for (size_t j = 0; j < object.size(); ++j) {
    if (entry.weight[j]) {
      double d = object[j] - entry.prototype[j];
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

WordSet describe(const Lexicon& lexicon, std::span<const double> object,
                 uint32_t k) {
  const uint32_t m = lexicon.word_count();
  if (k < 1 || k > m) {
    throw parameter_error("describe: k must be in [1, word_count], got " +
                          std::to_string(k));
  }
  std::vector<std::pair<double, uint32_t>> dist(m);
  for (uint32_t id = 0; id < m; ++id) {
    dist[id] = {weighted_distance(lexicon.words[id], object), id};
  }
  // pair ordering gives the documented tie-break: smaller distance first,
  // then smaller word_id.
  std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
  WordSet out(k);
  for (uint32_t i = 0; i < k; ++i) out[i] = dist[i].second;
  std::sort(out.begin(), out.end());
  return out;
}

ChanceLevel chance_level(uint64_t m, uint64_t k) {
  if (k < 1 || k > m) {
    throw parameter_error("chance_level: need 1 <= k <= m");
  }
  uint64_t kk = std::min(k, m - k);
  unsigned __int128 c = 1;
  constexpr unsigned __int128 kMax = std::numeric_limits<uint64_t>::max();
  for (uint64_t i = 1; i <= kk; ++i) {
    c = c * (m - kk + i) / i;  // exact: product of i consecutive integers
    if (c > kMax) {
      throw std::overflow_error("chance_level: C(m,k) exceeds 64-bit range");
    }
  }
  ChanceLevel out;
  out.combinations = static_cast<uint64_t>(c);
  out.probability = 1.0 / static_cast<double>(out.combinations);
  return out;
}

void save_lexicon(const Lexicon& lexicon, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("save_lexicon: cannot open " + path);
  char buf[64];
  out << "wordlab-lexicon v1\n";
  out << "m " << lexicon.word_count() << "\n";
  out << "n " << lexicon.n << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", lexicon.sensitivity_p);
  out << "sensitivity_p " << buf << "\n";
  out << "seed " << lexicon.rng_seed << "\n";
  out << "rng " << kRngAlgorithm << "\n";
  for (const WordEntry& w : lexicon.words) {
    out << w.word_id;
    for (double p : w.prototype) {
      std::snprintf(buf, sizeof buf, "%.17g", p);
      out << ' ' << buf;
    }
    out << ' ';
    for (uint8_t b : w.weight) out << (b ? '1' : '0');
    out << '\n';
  }
  if (!out) throw parse_error("save_lexicon: write failed for " + path);
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("load_lexicon: cannot open " + path);
  std::string line;
  auto fail = [&](const std::string& what) {
    throw parse_error("load_lexicon: " + what + " in " + path);
  };

  if (!std::getline(in, line) || line != "wordlab-lexicon v1") {
    fail("bad magic line");
  }
  uint32_t m = 0;
  Lexicon lex;
  std::string rng_id;
  for (const char* key : {"m", "n", "sensitivity_p", "seed", "rng"}) {
    if (!std::getline(in, line)) fail("truncated header");
    std::istringstream hs(line);
    std::string name;
    hs >> name;
    if (name != key) fail("expected header key '" + std::string(key) + "'");
    if (name == "m") hs >> m;
    else if (name == "n") hs >> lex.n;
    else if (name == "sensitivity_p") hs >> lex.sensitivity_p;
    else if (name == "seed") hs >> lex.rng_seed;
    else hs >> rng_id;
    if (hs.fail()) fail("bad header value for '" + std::string(key) + "'");
  }

  lex.words.reserve(m);
  for (uint32_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) fail("truncated at word " + std::to_string(i));
    std::istringstream ws(line);
    WordEntry entry;
    ws >> entry.word_id;
    entry.prototype.resize(lex.n);
    for (uint32_t j = 0; j < lex.n; ++j) ws >> entry.prototype[j];
    std::string bits;
    ws >> bits;
    if (ws.fail() || bits.size() != lex.n) {
      fail("bad word record at line " + std::to_string(i + 7));
    }
    entry.weight.resize(lex.n);
    for (uint32_t j = 0; j < lex.n; ++j) {
      if (bits[j] != '0' && bits[j] != '1') fail("bad weight bit");
      entry.weight[j] = bits[j] == '1' ? 1 : 0;
    }
    lex.words.push_back(std::move(entry));
  }
  return lex;
}

}  // namespace wordlab
