#pragma once

#include <cstdint>
#include <vector>

#include "rackcode/types.hpp"

namespace rackcode {

/// Prime field F_q together with the two elements every code in this project
/// is built from: a primitive element xi (the smallest primitive root mod q,
/// so all derived values are deterministic) and theta = xi^((q-1)/u), which
/// has multiplicative order exactly u and separates the u nodes of a rack.
struct Field {
  Symbol q = 0;
  int u = 0;
  Symbol xi = 0;
  Symbol theta = 0;

  Symbol add(Symbol a, Symbol b) const { return (a + b) % q; }
  Symbol sub(Symbol a, Symbol b) const { return (a + q - b) % q; }
  Symbol neg(Symbol a) const { return a == 0 ? 0 : q - a; }
  Symbol mul(Symbol a, Symbol b) const {
    return Symbol(std::uint64_t(a) * b % q);
  }
  Symbol pow(Symbol a, std::uint64_t e) const;
  /// Multiplicative inverse; throws ParameterError on zero.
  Symbol inv(Symbol a) const;
};

bool is_prime(Symbol n);

/// Order of a in F_q^*; a must be nonzero mod q.
Symbol multiplicative_order(Symbol a, Symbol q);

/// Builds F_q with u | q-1. Throws ParameterError if q is not prime or
/// u does not divide q-1.
Field make_field(Symbol q, int u);

/// Smallest prime q with u | q-1 and q-1 >= n*sbar (stacked) resp.
/// q-1 >= 2n (grouped). This floor makes (q-1)/u >= nbar*sbar, which is
/// exactly what keeps the n*sbar evaluation points theta^g xi^(i*sbar+j)
/// pairwise distinct.
Symbol smallest_valid_prime(int n, int sbar, int u, Construction c);

/// Explicit pairwise-distinctness check of the evaluation-point families
/// {theta^g xi^(i*sbar+j) : g in [u], i in [nbar], j in [sbar]}.
bool eval_points_distinct(const Field& f, int nbar, int sbar);

/// Dense row-major matrix over F_q. Plumbing for the per-row linear systems;
/// sizes stay tiny (at most r x r).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Symbol> e;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), e(std::size_t(r) * c, 0) {}
  Symbol& at(int r, int c) { return e[std::size_t(r) * cols + c]; }
  Symbol at(int r, int c) const { return e[std::size_t(r) * cols + c]; }
};

/// Solves M x = rhs exactly by Gaussian elimination with pivot search.
/// Throws SingularMatrixError when M is singular.
std::vector<Symbol> solve_linear(const Field& f, Matrix M, std::vector<Symbol> rhs);

}  // namespace rackcode
