#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hugeobj/domain.hpp"
#include "hugeobj/sets.hpp"

namespace hugeobj {

inline double cap01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// One additive update of a predictor: a signed test in [-1,1] with a weight.
struct PredictorTerm {
  std::function<double(Element)> test;
  double weight = 0.0;
  std::string name;

  static PredictorTerm from_set(const SetSpec& s, double weight) {
    auto c = s.contains;
    return {[c](Element x) { return c(x) ? 1.0 : 0.0; }, weight, s.name};
  }
};

// Predictor p: X -> [0,1] evaluated by iterated capped summation over
// (base, w_1 g_1(x), ..., w_t g_t(x)); the capping happens after every
// term, so term order matters.
struct CappedPredictor {
  DomainSpec domain = DomainSpec::indexed(1);
  double base = 0.5;
  std::vector<PredictorTerm> terms;

  double eval(Element x) const { return eval_prefix(x, terms.size()); }

  // Evaluation using only the first `count` terms; lets tests replay the
  // boosting trajectory from the final term list.
  double eval_prefix(Element x, std::size_t count) const {
    double v = cap01(base);
    for (std::size_t i = 0; i < count && i < terms.size(); ++i)
      v = cap01(v + terms[i].weight * terms[i].test(x));
    return v;
  }

  void append(PredictorTerm t) { terms.push_back(std::move(t)); }

  // Exact sum of p over the domain (enumeration; test/desk scale only).
  double exact_sum() const {
    double s = 0.0;
    for (Element x = 0; x < domain.cardinality(); ++x) s += eval(x);
    return s;
  }

  static CappedPredictor constant(const DomainSpec& dom, double value) {
    CappedPredictor p;
    p.domain = dom;
    p.base = value;
    return p;
  }
};

}  // namespace hugeobj
