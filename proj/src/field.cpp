#include "rackcode/field.hpp"

#include <string>

namespace rackcode {

Symbol Field::pow(Symbol a, std::uint64_t e) const {
  std::uint64_t base = a % q;
  std::uint64_t acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return Symbol(acc);
}

Symbol Field::inv(Symbol a) const {
  if (a % q == 0) throw ParameterError("inverse of zero in F_" + std::to_string(q));
  return pow(a, q - 2);
}

bool is_prime(Symbol n) {
  if (n < 2) return false;
  for (Symbol d = 2; std::uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Symbol multiplicative_order(Symbol a, Symbol q) {
  a %= q;
  if (a == 0) throw ParameterError("multiplicative order of zero");
  Symbol ord = 1;
  std::uint64_t x = a;
  while (x != 1) {
    x = x * a % q;
    ++ord;
  }
  return ord;
}

Field make_field(Symbol q, int u) {
  if (!is_prime(q)) throw ParameterError("field size " + std::to_string(q) + " is not prime");
  if (u < 1 || (q - 1) % Symbol(u) != 0)
    throw ParameterError("rack width u=" + std::to_string(u) + " does not divide q-1=" +
                         std::to_string(q - 1));
  Field f;
  f.q = q;
  f.u = u;
  f.xi = 0;
  for (Symbol cand = 2; cand < q; ++cand) {
    if (multiplicative_order(cand, q) == q - 1) {
      f.xi = cand;
      break;
    }
  }
  // q prime, so a primitive root always exists.
  f.theta = f.pow(f.xi, (q - 1) / Symbol(u));
  return f;
}

Symbol smallest_valid_prime(int n, int sbar, int u, Construction c) {
  std::uint64_t floor = (c == Construction::grouped) ? 2ull * n : std::uint64_t(n) * sbar;
  Symbol q = Symbol(floor + 1 > 3 ? floor + 1 : 3);
  for (;; ++q) {
    if ((q - 1) % Symbol(u) != 0) continue;
    if (is_prime(q)) return q;
  }
}

bool eval_points_distinct(const Field& f, int nbar, int sbar) {
  std::vector<bool> seen(f.q, false);
  for (int g = 0; g < f.u; ++g) {
    Symbol tg = f.pow(f.theta, g);
    for (int i = 0; i < nbar; ++i) {
      for (int j = 0; j < sbar; ++j) {
        Symbol p = f.mul(tg, f.pow(f.xi, std::uint64_t(i) * sbar + j));
        if (seen[p]) return false;
        seen[p] = true;
      }
    }
  }
  return true;
}

std::vector<Symbol> solve_linear(const Field& f, Matrix M, std::vector<Symbol> rhs) {
  if (M.rows != M.cols || int(rhs.size()) != M.rows)
    throw ParameterError("solve_linear requires a square system");
  const int n = M.rows;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (M.at(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrixError("singular matrix in F_" + std::to_string(f.q));
    if (pivot != col) {
      for (int c = col; c < n; ++c) std::swap(M.at(pivot, c), M.at(col, c));
      std::swap(rhs[pivot], rhs[col]);
    }
    Symbol piv_inv = f.inv(M.at(col, col));
    for (int c = col; c < n; ++c) M.at(col, c) = f.mul(M.at(col, c), piv_inv);
    rhs[col] = f.mul(rhs[col], piv_inv);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Symbol factor = M.at(r, col);
      if (factor == 0) continue;
      for (int c = col; c < n; ++c)
        M.at(r, c) = f.sub(M.at(r, c), f.mul(factor, M.at(col, c)));
      rhs[r] = f.sub(rhs[r], f.mul(factor, rhs[col]));
    }
  }
  return rhs;
}

}  // namespace rackcode
