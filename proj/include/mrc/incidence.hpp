#pragma once

// Equation systems for lines through marked points: the expansion of a form
// along the line s*p + t*Q, the lines-through-a-point system, the comb
// system of m lines meeting in one point, and linear elimination.

#include <cstddef>
#include <span>
#include <vector>

#include "mrc/moduli.hpp"
#include "mrc/poly.hpp"
#include "mrc/projective.hpp"

namespace mrc {

// F(s*p + t*Q) = sum_{k=0}^{d} s^{d-k} t^k H_k(Q).
struct LineExpansion {
  ProjPoint base_point;
  FieldElem value_at_base;          // H_0 = F(p)
  std::vector<MultiPoly> coefficients;  // H_1 .. H_d; H_k has degree k

  unsigned degree() const noexcept { return static_cast<unsigned>(coefficients.size()); }
  const MultiPoly& h(unsigned k) const { return coefficients.at(k - 1); }
};

// Throws InvalidForm for a zero or constant form, IncompatibleOperands if p
// has the wrong length or field.
LineExpansion bihomog_expand(const MultiPoly& form, const ProjPoint& p);

// Coordinates in which p is the first basis vector. With pivot = leading
// index of p, the change of basis sends e_0 to p and e_j (j >= 1) to the
// j-th standard basis vector other than e_pivot. Directions Q_1..Q_n of
// lines through p then correspond to points of the hyperplane x_pivot = 0.
class DirectionFrame {
 public:
  explicit DirectionFrame(ProjPoint base);

  const ProjPoint& base() const noexcept { return base_; }
  std::size_t pivot() const noexcept { return pivot_; }
  std::size_t direction_dim() const noexcept { return direction_coords_.size(); }
  // The ambient point M*(0, Q_1, ..., Q_n).
  ProjPoint direction_to_point(const ProjPoint& direction) const;
  // Images of x_0..x_n as linear forms in Q_1..Q_n (x_pivot -> 0).
  std::vector<MultiPoly> direction_images() const;

 private:
  ProjPoint base_;
  std::size_t pivot_;
  std::vector<std::size_t> direction_coords_;
};

// All H_k^{(i)}, k = 1..d_i, of every form at p, restricted to directions.
// The result lives in n variables; its projective zeros are exactly the
// lines through p on X. Throws PointNotOnVariety.
PolySystem line_system(const PolySystem& forms, const ProjPoint& p);

// For each form F_i and each point p_j, the coefficients H_1..H_{d_i - 1} of
// the expansion at p_j, then F_i itself once (it is the shared top
// coefficient). Throws PointNotOnVariety or DegenerateConfiguration.
PolySystem comb_system(const PolySystem& forms, std::span<const ProjPoint> points);

struct Elimination {
  PolySystem reduced;
  std::size_t new_num_vars;
  // Rank of the linear members.
  std::size_t eliminated_count;
  std::size_t linear_members;
  // Indices into reduced.polys() of members that vanished identically under
  // substitution (they stay in the system as zero forms).
  std::vector<std::size_t> vanished;
  std::vector<std::size_t> pivot_vars;
  std::vector<std::size_t> free_vars;
};

// Solves the degree-1 members for their pivot variables over F_q and
// substitutes into every other member.
Elimination eliminate_linear(const PolySystem& system);

DegreeMultiset system_type(const PolySystem& system);

}  // namespace mrc
