#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fuzzprob {

/// Uniform inclusive grid lo = point(0) < ... < point(n-1) = hi.
class Universe {
 public:
  Universe(std::string name, double lo, double hi, std::size_t n);

  const std::string& name() const noexcept { return name_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return n_; }
  double step() const noexcept { return (hi_ - lo_) / static_cast<double>(n_ - 1); }

  double point(std::size_t k) const;

  /// Index of the grid point nearest to x; x is clamped to [lo, hi] and a tie
  /// between two neighbours resolves to the lower index.
  std::size_t nearest_index(double x) const noexcept;

  friend bool operator==(const Universe&, const Universe&) = default;

 private:
  std::string name_;
  double lo_;
  double hi_;
  std::size_t n_;
};

struct Triangular {
  double a, b, c;
};
struct Trapezoidal {
  double a, b, c, d;
};
struct Singleton {
  double p;
};

class MembershipFunction {
 public:
  using Shape = std::variant<Triangular, Trapezoidal, Singleton>;

  static MembershipFunction triangular(double a, double b, double c);
  static MembershipFunction trapezoidal(double a, double b, double c, double d);
  static MembershipFunction singleton(double p);

  const Shape& shape() const noexcept { return shape_; }

 private:
  explicit MembershipFunction(Shape shape) : shape_(shape) {}
  Shape shape_;
};

/// Piecewise-linear evaluation in [0,1]. A singleton evaluates to 1 only at
/// exactly p; discretize() snaps it to the nearest grid point instead.
double eval_membership(const MembershipFunction& mf, double x);

class MembershipVector {
 public:
  /// Throws DimensionError on a length mismatch and DomainError for grades outside [0,1].
  MembershipVector(Universe universe, std::vector<double> grades);

  static MembershipVector zeros(Universe universe);
  static MembershipVector one_hot(Universe universe, std::size_t index);

  const Universe& universe() const noexcept { return universe_; }
  std::span<const double> grades() const noexcept { return grades_; }
  double operator[](std::size_t k) const { return grades_[k]; }
  std::size_t size() const noexcept { return grades_.size(); }

 private:
  Universe universe_;
  std::vector<double> grades_;
};

MembershipVector discretize(const MembershipFunction& mf, const Universe& u);

/// m x n matrix of grades, row-major, rows indexed by the domain universe.
class Relation {
 public:
  Relation(Universe domain, Universe codomain, std::vector<double> entries);

  const Universe& domain() const noexcept { return domain_; }
  const Universe& codomain() const noexcept { return codomain_; }
  std::size_t rows() const noexcept { return domain_.size(); }
  std::size_t cols() const noexcept { return codomain_.size(); }
  double at(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(entries_).subspan(i * cols(), cols());
  }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  Universe domain_;
  Universe codomain_;
  std::vector<double> entries_;
};

enum class CompositionSemantics { MaxMin, MaxProduct };

/// y = x o R. MaxMin: y(j) = max_i min(x(i), R(i,j)); MaxProduct: max_i x(i) R(i,j).
MembershipVector compose(const MembershipVector& x, const Relation& r,
                         CompositionSemantics sem = CompositionSemantics::MaxMin);

struct FuzzyRule {
  MembershipVector antecedent;
  MembershipVector consequent;
};

/// Mamdani relation: R(i,j) = max_r min(A_r(i), B_r(j)).
Relation relation_from_rules(std::span<const FuzzyRule> rules);

}  // namespace fuzzprob
