#pragma once

// Compact covers of the regulator states enabling one value change.
//
// A partial regulator state fixes some regulator values and wildcards the
// rest; it stands for the box of all completions. A cover set must witness,
// for every enabling regulator state and every regulator position, a member
// that contains the state and pins that position's value, while no member
// may reach outside the enabling region.
//
// Construction is greedy: repeatedly take the uncovered enabling state of
// least weight and extend the cover with the widest safe boxes around it,
// narrowing level by level until the state is fully witnessed. The weight
// counts the safe one-wildcard boxes through a state, with an exact
// fractional tie-break that also counts boxes already consumed by earlier
// picks. Boxes touching an already-picked state are not reused.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "prn/model.hpp"

namespace prn {

inline constexpr Value kWild = -1;

// Mixed-radix product of regulator domains, first position most significant.
struct RegulatorSpace {
  std::vector<Value> card;
  std::vector<int> strides;
  int total = 1;

  explicit RegulatorSpace(std::vector<Value> cardinalities) : card(std::move(cardinalities)) {
    strides.assign(card.size(), 1);
    long long size = 1;
    for (int p = static_cast<int>(card.size()) - 1; p >= 0; --p) {
      if (card[p] < 2) throw std::invalid_argument("regulator domain needs at least two values");
      strides[p] = static_cast<int>(size);
      size *= card[p];
      if (size > (1 << 28)) throw std::invalid_argument("regulator state space too large");
    }
    total = static_cast<int>(size);
  }

  int positions() const { return static_cast<int>(card.size()); }

  Value digit(int wi, int p) const { return static_cast<Value>((wi / strides[p]) % card[p]); }

  std::vector<Value> values(int wi) const {
    std::vector<Value> w(card.size());
    for (std::size_t p = 0; p < card.size(); ++p) w[p] = digit(wi, static_cast<int>(p));
    return w;
  }

  int index(const std::vector<Value>& w) const {
    int wi = 0;
    for (std::size_t p = 0; p < card.size(); ++p) wi += static_cast<int>(w[p]) * strides[p];
    return wi;
  }
};

using PartialRegulatorState = std::vector<Value>;

inline bool partial_contains(const RegulatorSpace& sp, const PartialRegulatorState& al, int wi) {
  for (int p = 0; p < sp.positions(); ++p)
    if (al[p] != kWild && al[p] != sp.digit(wi, p)) return false;
  return true;
}

inline int wildcard_count(const PartialRegulatorState& al) {
  int n = 0;
  for (Value v : al) n += v == kWild;
  return n;
}

// Total number of pinned regulator values across the set.
inline int spec_count(const std::vector<PartialRegulatorState>& cover) {
  int n = 0;
  for (const auto& al : cover) n += static_cast<int>(al.size()) - wildcard_count(al);
  return n;
}

namespace detail {

template <typename Fn>
inline void for_each_member(const RegulatorSpace& sp, const PartialRegulatorState& al, Fn&& fn) {
  std::vector<int> wilds;
  int base = 0;
  for (int p = 0; p < sp.positions(); ++p) {
    if (al[p] == kWild)
      wilds.push_back(p);
    else
      base += static_cast<int>(al[p]) * sp.strides[p];
  }
  std::vector<Value> digits(wilds.size(), 0);
  while (true) {
    int wi = base;
    for (std::size_t k = 0; k < wilds.size(); ++k) wi += static_cast<int>(digits[k]) * sp.strides[wilds[k]];
    fn(wi);
    int k = static_cast<int>(wilds.size()) - 1;
    while (k >= 0 && digits[k] == sp.card[wilds[k]] - 1) digits[k--] = 0;
    if (k < 0) break;
    ++digits[k];
  }
}

// Canonical listing order: entrywise, pinned values before wildcards.
inline bool wild_last_less(const PartialRegulatorState& a, const PartialRegulatorState& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Value ra = a[i] == kWild ? std::numeric_limits<Value>::max() : a[i];
    const Value rb = b[i] == kWild ? std::numeric_limits<Value>::max() : b[i];
    if (ra != rb) return ra < rb;
  }
  return false;
}

inline long long partial_key(const RegulatorSpace& sp, const PartialRegulatorState& al) {
  long long key = 0;
  for (int p = 0; p < sp.positions(); ++p) key = key * (sp.card[p] + 1) + (al[p] == kWild ? sp.card[p] : al[p]);
  return key;
}

}  // namespace detail

// Exact weight: live one-wildcard boxes through the state, plus all such
// boxes (consumed ones included) scaled by 1 / (positions + 1).
struct CoverWeight {
  long long num = 0;
  long long den = 1;

  friend bool operator<(const CoverWeight& a, const CoverWeight& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const CoverWeight& a, const CoverWeight& b) { return a.num * b.den == b.num * a.den; }
};

// One-wildcard partial states whose members are all enabling, listed per
// position in ascending base order.
inline std::vector<PartialRegulatorState> level1_enabling(const RegulatorSpace& sp,
                                                          const std::vector<bool>& enabling) {
  std::vector<PartialRegulatorState> out;
  for (int p = 0; p < sp.positions(); ++p) {
    for (int wi = 0; wi < sp.total; ++wi) {
      if (sp.digit(wi, p) != 0) continue;
      bool safe = true;
      for (Value k = 0; k < sp.card[p] && safe; ++k) safe = enabling[wi + static_cast<int>(k) * sp.strides[p]];
      if (!safe) continue;
      auto al = sp.values(wi);
      al[p] = kWild;
      out.push_back(std::move(al));
    }
  }
  return out;
}

inline CoverWeight cover_weight(const RegulatorSpace& sp, int wi, const std::vector<PartialRegulatorState>& level1,
                                const std::vector<bool>& removed) {
  long long live = 0, all = 0;
  for (std::size_t e = 0; e < level1.size(); ++e) {
    if (!partial_contains(sp, level1[e], wi)) continue;
    ++all;
    if (!removed[e]) ++live;
  }
  const long long den = sp.positions() + 1;
  return {live * den + all, den};
}

struct CoverStats {
  long long ops = 0;  // member visits, a machine-independent work measure
};

inline std::vector<PartialRegulatorState> compute_cover_set(const RegulatorSpace& sp,
                                                            const std::vector<bool>& enabling,
                                                            CoverStats* stats = nullptr) {
  const int r = sp.positions();
  if (static_cast<int>(enabling.size()) != sp.total) throw std::invalid_argument("enabling size mismatch");
  std::vector<PartialRegulatorState> cover;
  if (r == 0) {
    // no regulators to witness, the empty box still marks the change usable
    if (enabling[0]) cover.push_back({});
    return cover;
  }
  CoverStats local;
  CoverStats& st = stats ? *stats : local;

  struct Edge {
    PartialRegulatorState partial;
    int position;
    bool removed = false;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> edges_at(sp.total);
  for (int p = 0; p < r; ++p) {
    for (int wi = 0; wi < sp.total; ++wi) {
      if (sp.digit(wi, p) != 0) continue;
      bool safe = true;
      for (Value k = 0; k < sp.card[p] && safe; ++k) safe = enabling[wi + static_cast<int>(k) * sp.strides[p]];
      st.ops += sp.card[p];
      if (!safe) continue;
      auto al = sp.values(wi);
      al[p] = kWild;
      const int id = static_cast<int>(edges.size());
      edges.push_back({std::move(al), p});
      for (Value k = 0; k < sp.card[p]; ++k) edges_at[wi + static_cast<int>(k) * sp.strides[p]].push_back(id);
    }
  }

  std::vector<int> live_cnt(sp.total, 0), all_cnt(sp.total, 0);
  for (int wi = 0; wi < sp.total; ++wi) {
    all_cnt[wi] = static_cast<int>(edges_at[wi].size());
    live_cnt[wi] = all_cnt[wi];
  }
  const long long den = r + 1;
  auto weight_num = [&](int wi) { return static_cast<long long>(live_cnt[wi]) * den + all_cnt[wi]; };

  std::set<std::pair<long long, int>> pending;  // (weight numerator, state index)
  for (int wi = 0; wi < sp.total; ++wi)
    if (enabling[wi]) pending.insert({weight_num(wi), wi});

  std::vector<bool> covered(sp.total, false);
  const std::uint32_t full = r >= 31 ? ~0u : (1u << r) - 1u;
  std::vector<std::uint32_t> covmask(sp.total, 0);
  std::unordered_map<long long, bool> safety_memo;
  std::set<long long> in_cover;

  auto partial_safe = [&](const PartialRegulatorState& al, long long key) {
    auto it = safety_memo.find(key);
    if (it != safety_memo.end()) return it->second;
    bool safe = true;
    detail::for_each_member(sp, al, [&](int m) {
      ++st.ops;
      safe = safe && enabling[m];
    });
    safety_memo.emplace(key, safe);
    return safe;
  };
  auto partial_removed = [&](const PartialRegulatorState& al) {
    bool hit = false;
    detail::for_each_member(sp, al, [&](int m) {
      ++st.ops;
      hit = hit || covered[m];
    });
    return hit;
  };

  // candidate extension boxes around wi with exactly lvl wildcards
  auto candidates_at = [&](int lvl, int wi) {
    std::vector<PartialRegulatorState> out;
    if (lvl == 0) {
      if (!covered[wi]) out.push_back(sp.values(wi));
      return out;
    }
    if (lvl == 1) {
      for (int id : edges_at[wi])
        if (!edges[id].removed) out.push_back(edges[id].partial);
      std::sort(out.begin(), out.end(), detail::wild_last_less);
      return out;
    }
    std::vector<int> pick(lvl);
    for (int i = 0; i < lvl; ++i) pick[i] = i;
    const auto base = sp.values(wi);
    while (true) {
      PartialRegulatorState al = base;
      for (int i : pick) al[i] = kWild;
      const long long key = detail::partial_key(sp, al);
      if (partial_safe(al, key) && !partial_removed(al)) out.push_back(std::move(al));
      int i = lvl - 1;
      while (i >= 0 && pick[i] == r - lvl + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int k = i + 1; k < lvl; ++k) pick[k] = pick[k - 1] + 1;
    }
    std::sort(out.begin(), out.end(), detail::wild_last_less);
    return out;
  };

  while (!pending.empty()) {
    const int wi = pending.begin()->second;
    pending.erase(pending.begin());

    std::vector<PartialRegulatorState> ext;
    auto covered_with = [&](const std::vector<PartialRegulatorState>& e) {
      std::uint32_t m = covmask[wi];
      for (const auto& al : e)
        for (int p = 0; p < r; ++p)
          if (al[p] != kWild) m |= 1u << p;
      return m == full;
    };
    if (!covered_with(ext)) {
      for (int lvl = r - 1; lvl >= 0; --lvl) {
        ext = candidates_at(lvl, wi);
        if (covered_with(ext)) break;
      }
    }
    for (auto& al : ext) {
      const long long key = detail::partial_key(sp, al);
      if (!in_cover.insert(key).second) continue;
      std::uint32_t bits = 0;
      for (int p = 0; p < r; ++p)
        if (al[p] != kWild) bits |= 1u << p;
      detail::for_each_member(sp, al, [&](int m) {
        ++st.ops;
        covmask[m] |= bits;
      });
      cover.push_back(std::move(al));
    }

    covered[wi] = true;
    for (int id : edges_at[wi]) {
      if (edges[id].removed) continue;
      edges[id].removed = true;
      detail::for_each_member(sp, edges[id].partial, [&](int m) {
        ++st.ops;
        if (m == wi || !enabling[m] || covered[m]) return;
        auto it = pending.find({weight_num(m), m});
        --live_cnt[m];
        if (it != pending.end()) {
          pending.erase(it);
          pending.insert({weight_num(m), m});
        }
      });
    }
  }
  return cover;
}

// Every enabling state as its own fully pinned box.
inline std::vector<PartialRegulatorState> concrete_cover_set(const RegulatorSpace& sp,
                                                             const std::vector<bool>& enabling) {
  std::vector<PartialRegulatorState> out;
  for (int wi = 0; wi < sp.total; ++wi)
    if (enabling[wi]) out.push_back(sp.values(wi));
  return out;
}

inline std::string format_partial(const PartialRegulatorState& al) {
  std::string s = "⟨";
  for (std::size_t p = 0; p < al.size(); ++p) {
    if (p) s += ' ';
    s += al[p] == kWild ? std::string("*") : std::to_string(al[p]);
  }
  return s + "⟩";
}

// Checks the two defining conditions; returns a description of the first
// violation, or nothing when the set is a cover set.
inline std::optional<std::string> verify_cover_set(const RegulatorSpace& sp, const std::vector<bool>& enabling,
                                                   const std::vector<PartialRegulatorState>& cover) {
  for (const auto& al : cover) {
    if (static_cast<int>(al.size()) != sp.positions()) return "member arity mismatch";
    std::optional<std::string> bad;
    detail::for_each_member(sp, al, [&](int m) {
      if (!bad && !enabling[m]) bad = "member " + format_partial(al) + " contains non-enabling state #" + std::to_string(m);
    });
    if (bad) return bad;
  }
  for (int wi = 0; wi < sp.total; ++wi) {
    if (!enabling[wi]) continue;
    for (int p = 0; p < sp.positions(); ++p) {
      bool witnessed = false;
      for (const auto& al : cover)
        if (al[p] == sp.digit(wi, p) && partial_contains(sp, al, wi)) {
          witnessed = true;
          break;
        }
      if (!witnessed)
        return "state #" + std::to_string(wi) + " position " + std::to_string(p) + " not witnessed";
    }
  }
  return std::nullopt;
}

}  // namespace prn
