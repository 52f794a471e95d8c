#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "drsit/error.hpp"
#include "drsit/metrics.hpp"
#include "drsit/rng.hpp"

using namespace drsit;

namespace {

double pairwise_auroc(const std::vector<double>& s, const std::vector<bool>& l) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!l[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (l[j]) continue;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
      pairs += 1.0;
    }
  }
  return wins / pairs;
}

// std::vector<bool> has no contiguous storage.
struct Labels {
  std::unique_ptr<bool[]> data;
  std::size_t n;
  explicit Labels(const std::vector<bool>& v) : data(new bool[v.size()]), n(v.size()) {
    for (std::size_t i = 0; i < n; ++i) data[i] = v[i];
  }
  std::span<const bool> span() const { return {data.get(), n}; }
};

double auroc_of(const std::vector<double>& s, const std::vector<bool>& l) { return auroc(s, Labels(l).span()); }

ConfusionMetrics confusion_of(const std::vector<bool>& sel, const std::vector<bool>& lab) {
  return confusion_metrics(Labels(sel).span(), Labels(lab).span());
}

}  // namespace

TEST_CASE("auroc examples") {
  CHECK(auroc_of({0.9, 0.1}, {true, false}) == 1.0);
  CHECK(auroc_of({0.4, 0.4, 0.4}, {true, false, true}) == 0.5);
  CHECK(auroc_of({3, 2, 1}, {true, false, true}) == 0.5);
  CHECK_THROWS_AS(auroc_of({1, 2}, {true, true}), Error);
}

TEST_CASE("auroc equals the pairwise count with ties") {
  CounterRng rng(5, {0});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.below(40);
    std::vector<double> s(n);
    std::vector<bool> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(6));  // coarse values force ties
      l[i] = rng.bernoulli(0.4);
    }
    l[0] = true;
    l[1] = false;
    CHECK(auroc_of(s, l) == pairwise_auroc(s, l));
  }
}

TEST_CASE("auroc is invariant to monotone transforms and flips under negation") {
  const std::vector<double> s{0.3, 1.2, -0.5, 2.0, 0.7, 0.1};
  const std::vector<bool> l{true, true, false, true, false, false};
  std::vector<double> t, neg;
  for (double v : s) {
    t.push_back(std::exp(3.0 * v) + 1.0);
    neg.push_back(-v);
  }
  CHECK(auroc_of(t, l) == auroc_of(s, l));
  CHECK(auroc_of(neg, l) == doctest::Approx(1.0 - auroc_of(s, l)));
}

TEST_CASE("confusion metric examples") {
  const ConfusionMetrics perfect = confusion_of({true, false, true}, {true, false, true});
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.f1 == 1.0);
  CHECK(perfect.csi == 1.0);

  std::vector<bool> sel{true, true, true, false, false, false, false, false, false, false};
  std::vector<bool> lab{true, true, false, true, false, false, false, false, false, false};
  const ConfusionMetrics m = confusion_of(sel, lab);
  CHECK(m.tp == 2);
  CHECK(m.fp == 1);
  CHECK(m.fn == 1);
  CHECK(m.tn == 6);
  CHECK(m.accuracy == doctest::Approx(0.8));
  CHECK(m.f1 == doctest::Approx(4.0 / 6.0));
  CHECK(m.csi == doctest::Approx(0.5));

  const ConfusionMetrics empty = confusion_of({false, false}, {false, false});
  CHECK(empty.accuracy == 1.0);
  CHECK(empty.f1 == 1.0);
  CHECK(empty.csi == 1.0);
}

TEST_CASE("csi never exceeds f1") {
  CounterRng rng(2, {0});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<bool> sel(12), lab(12);
    for (int i = 0; i < 12; ++i) {
      sel[i] = rng.bernoulli(0.5);
      lab[i] = rng.bernoulli(0.5);
    }
    const ConfusionMetrics m = confusion_of(sel, lab);
    CHECK(m.csi <= m.f1 + 1e-15);
    CHECK(m.tp + m.fp + m.tn + m.fn == 12);
  }
}
