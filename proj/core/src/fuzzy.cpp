#include "fuzzprob/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzprob/error.hpp"

namespace fuzzprob {

namespace {

bool is_grade(double g) { return g >= 0.0 && g <= 1.0; }  // false for NaN

void check_finite(std::initializer_list<double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite parameter");
  }
}

}  // namespace

Universe::Universe(std::string name, double lo, double hi, std::size_t n)
    : name_(std::move(name)), lo_(lo), hi_(hi), n_(n) {
  if (n_ < 2) throw DomainError("universe '" + name_ + "': need at least 2 points");
  if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_)) {
    throw DomainError("universe '" + name_ + "': need finite lo < hi");
  }
}

double Universe::point(std::size_t k) const {
  if (k >= n_) throw DimensionError("grid index out of range");
  if (k == n_ - 1) return hi_;
  return lo_ + static_cast<double>(k) * (hi_ - lo_) / static_cast<double>(n_ - 1);
}

std::size_t Universe::nearest_index(double x) const noexcept {
  if (!(x > lo_)) return 0;  // also catches NaN
  if (x >= hi_) return n_ - 1;
  auto k = static_cast<std::size_t>(std::floor((x - lo_) / step()));
  k = std::min(k, n_ - 2);
  const double below = x - point(k);
  const double above = point(k + 1) - x;
  return above < below ? k + 1 : k;
}

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
  check_finite({a, b, c}, "triangular");
  if (!(a <= b && b <= c)) throw DomainError("triangular: need a <= b <= c");
  return MembershipFunction(Triangular{a, b, c});
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
  check_finite({a, b, c, d}, "trapezoidal");
  if (!(a <= b && b <= c && c <= d)) throw DomainError("trapezoidal: need a <= b <= c <= d");
  return MembershipFunction(Trapezoidal{a, b, c, d});
}

MembershipFunction MembershipFunction::singleton(double p) {
  check_finite({p}, "singleton");
  return MembershipFunction(Singleton{p});
}

namespace {

// Vertical edges (a == b or c == d) are handled by the plateau test first.
double trapezoid_grade(double x, double a, double b, double c, double d) {
  if (x >= b && x <= c) return 1.0;
  if (x <= a || x >= d) return 0.0;
  if (x < b) return std::clamp((x - a) / (b - a), 0.0, 1.0);
  return std::clamp((d - x) / (d - c), 0.0, 1.0);
}

}  // namespace

double eval_membership(const MembershipFunction& mf, double x) {
  struct Visitor {
    double x;
    double operator()(const Triangular& t) const { return trapezoid_grade(x, t.a, t.b, t.b, t.c); }
    double operator()(const Trapezoidal& t) const { return trapezoid_grade(x, t.a, t.b, t.c, t.d); }
    double operator()(const Singleton& s) const { return x == s.p ? 1.0 : 0.0; }
  };
  return std::visit(Visitor{x}, mf.shape());
}

MembershipVector::MembershipVector(Universe universe, std::vector<double> grades)
    : universe_(std::move(universe)), grades_(std::move(grades)) {
  if (grades_.size() != universe_.size()) {
    throw DimensionError("membership vector on '" + universe_.name() + "': expected " +
                         std::to_string(universe_.size()) + " grades, got " +
                         std::to_string(grades_.size()));
  }
  for (std::size_t k = 0; k < grades_.size(); ++k) {
    if (!is_grade(grades_[k])) {
      throw DomainError("grade " + std::to_string(k) + " outside [0,1]");
    }
  }
}

MembershipVector MembershipVector::zeros(Universe universe) {
  const auto n = universe.size();
  return MembershipVector(std::move(universe), std::vector<double>(n, 0.0));
}

MembershipVector MembershipVector::one_hot(Universe universe, std::size_t index) {
  if (index >= universe.size()) throw DimensionError("one-hot index out of range");
  std::vector<double> g(universe.size(), 0.0);
  g[index] = 1.0;
  return MembershipVector(std::move(universe), std::move(g));
}

MembershipVector discretize(const MembershipFunction& mf, const Universe& u) {
  if (const auto* s = std::get_if<Singleton>(&mf.shape())) {
    return MembershipVector::one_hot(u, u.nearest_index(s->p));
  }
  std::vector<double> g(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) g[k] = eval_membership(mf, u.point(k));
  return MembershipVector(u, std::move(g));
}

Relation::Relation(Universe domain, Universe codomain, std::vector<double> entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
  if (entries_.size() != domain_.size() * codomain_.size()) {
    throw DimensionError("relation: expected " + std::to_string(domain_.size()) + "x" +
                         std::to_string(codomain_.size()) + " entries");
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!is_grade(entries_[k])) {
      throw DomainError("relation entry (" + std::to_string(k / cols()) + "," +
                        std::to_string(k % cols()) + ") outside [0,1]");
    }
  }
}

MembershipVector compose(const MembershipVector& x, const Relation& r, CompositionSemantics sem) {
  if (x.universe() != r.domain()) {
    throw DimensionError("compose: input lives on '" + x.universe().name() +
                         "' but relation domain is '" + r.domain().name() + "'");
  }
  std::vector<double> y(r.cols(), 0.0);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const double xi = x[i];
    const auto row = r.row(i);
    if (sem == CompositionSemantics::MaxMin) {
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = std::max(y[j], std::min(xi, row[j]));
    } else {
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = std::max(y[j], xi * row[j]);
    }
  }
  return MembershipVector(r.codomain(), std::move(y));
}

Relation relation_from_rules(std::span<const FuzzyRule> rules) {
  if (rules.empty()) throw DomainError("empty rule base");
  const Universe& in = rules.front().antecedent.universe();
  const Universe& out = rules.front().consequent.universe();
  std::vector<double> entries(in.size() * out.size(), 0.0);
  for (const auto& rule : rules) {
    if (rule.antecedent.universe() != in || rule.consequent.universe() != out) {
      throw DimensionError("relation_from_rules: rules span different universes");
    }
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double a = rule.antecedent[i];
      for (std::size_t j = 0; j < out.size(); ++j) {
        auto& e = entries[i * out.size() + j];
        e = std::max(e, std::min(a, rule.consequent[j]));
      }
    }
  }
  return Relation(in, out, std::move(entries));
}

}  // namespace fuzzprob
