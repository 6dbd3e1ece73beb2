#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latlim/spaces.hpp"

namespace latlim {

enum class Method { Structural, LpExact, Sampled };

std::string method_name(Method m);

struct CheckConfig {
  std::uint64_t seed = 1;
  int samples = 40;
  Index horizon = 16;            // output window for sequence-map checks
  std::uint64_t vertex_cap = 1u << 16;
};

/// Machine-checkable counterexample or certificate payload.
struct Witness {
  std::string kind;
  std::string text;
  std::vector<std::pair<std::string, Element>> elements;
  std::vector<std::pair<std::string, Rat>> values;
};

/// Decision outcome. A sampled "holds" is inconclusive-positive and is never
/// upgraded; "fails" always carries an exact witness.
struct Verdict {
  bool holds = false;
  bool conclusive = true;
  Method method = Method::Structural;
  std::uint64_t seed = 0;
  int samples = 0;
  std::optional<Witness> witness;
  std::vector<std::string> notes;

  static Verdict yes(Method m) {
    Verdict v;
    v.holds = true;
    v.method = m;
    v.conclusive = m != Method::Sampled;
    return v;
  }
  static Verdict yes_sampled(std::uint64_t seed, int samples) {
    Verdict v;
    v.holds = true;
    v.conclusive = false;  // inconclusive-positive
    v.method = Method::Sampled;
    v.seed = seed;
    v.samples = samples;
    return v;
  }
  static Verdict no(Method m, Witness w) {
    Verdict v;
    v.holds = false;
    v.conclusive = true;
    v.method = m;
    v.witness = std::move(w);
    return v;
  }
  static Verdict no_inconclusive(Method m, std::string note) {
    Verdict v;
    v.holds = false;
    v.conclusive = false;
    v.method = m;
    v.notes.push_back(std::move(note));
    return v;
  }
};

struct CheckItem {
  std::string name;
  bool pass = false;
  bool conclusive = true;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<CheckItem> items;
  std::vector<std::string> notes;

  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  bool all_conclusive() const {
    for (const auto& it : items)
      if (!it.conclusive) return false;
    return true;
  }
  void add(std::string name, bool pass, std::string detail = "", bool conclusive = true) {
    items.push_back({std::move(name), pass, conclusive, std::move(detail)});
  }
};

}  // namespace latlim
