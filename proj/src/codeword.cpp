#include "rackcode/codeword.hpp"

#include <algorithm>
#include <string>

#include "rackcode/radix.hpp"

namespace rackcode {

Symbol eval_point(const Field& f, int sbar, int rack, int g, int digit) {
  Symbol lambda = f.pow(f.xi, std::uint64_t(rack) * sbar + digit);
  return f.mul(f.pow(f.theta, g), lambda);
}

Symbol node_point(const SystemParams& p, const Field& f, int pos, std::uint32_t a) {
  int rack = pos / p.u;
  int g = pos % p.u;
  return eval_point(f, p.sbar, rack, g, row_digit(a, rack, p.sbar, p.nbar));
}

void recover_row(const SystemParams& p, const Field& f, std::vector<Symbol>& row,
                 const std::vector<int>& unknown, std::uint32_t a) {
  const int e = int(unknown.size());
  if (e == 0) return;
  std::vector<Symbol> points(p.n);
  for (int pos = 0; pos < p.n; ++pos) points[pos] = node_point(p, f, pos, a);

  std::vector<bool> is_unknown(p.n, false);
  for (int pos : unknown) is_unknown[pos] = true;

  Matrix M(e, e);
  std::vector<Symbol> rhs(e, 0);
  std::vector<Symbol> pw(p.n, 1);  // points^t, advanced per equation
  for (int t = 0; t < e; ++t) {
    Symbol acc = 0;
    for (int pos = 0; pos < p.n; ++pos) {
      if (is_unknown[pos]) continue;
      acc = f.add(acc, f.mul(pw[pos], row[pos]));
    }
    rhs[t] = f.neg(acc);
    for (int idx = 0; idx < e; ++idx) M.at(t, idx) = pw[unknown[idx]];
    for (int pos = 0; pos < p.n; ++pos) pw[pos] = f.mul(pw[pos], points[pos]);
  }
  std::vector<Symbol> sol = solve_linear(f, std::move(M), std::move(rhs));
  for (int idx = 0; idx < e; ++idx) row[unknown[idx]] = sol[idx];
}

namespace {

FlatCodeword encode_instance(const SystemParams& p, const Field& f, const Message& msg,
                             int y, std::uint32_t rows) {
  FlatCodeword cw(p.n, rows);
  std::vector<int> parity(p.r);
  for (int i = 0; i < p.r; ++i) parity[i] = p.k + i;
  std::vector<Symbol> row(p.n, 0);
  for (std::uint32_t a = 0; a < rows; ++a) {
    for (int j = 0; j < p.k; ++j)
      row[j] = msg[std::size_t(j) * p.l + std::uint64_t(y) * rows + a];
    recover_row(p, f, row, parity, a);
    for (int pos = 0; pos < p.n; ++pos) cw.at(pos, a) = row[pos];
  }
  return cw;
}

bool parity_check_instance(const SystemParams& p, const Field& f, const FlatCodeword& cw) {
  std::vector<Symbol> points(p.n);
  std::vector<Symbol> pw(p.n);
  for (std::uint32_t a = 0; a < cw.rows; ++a) {
    for (int pos = 0; pos < p.n; ++pos) {
      points[pos] = node_point(p, f, pos, a);
      pw[pos] = 1;
    }
    for (int t = 0; t < p.r; ++t) {
      Symbol acc = 0;
      for (int pos = 0; pos < p.n; ++pos) {
        acc = f.add(acc, f.mul(pw[pos], cw.at(pos, a)));
        pw[pos] = f.mul(pw[pos], points[pos]);
      }
      if (acc != 0) return false;
    }
  }
  return true;
}

std::vector<int> erased_from_known(const SystemParams& p, const std::vector<int>& known) {
  std::vector<bool> have(p.n, false);
  for (int pos : known) {
    if (pos < 0 || pos >= p.n) throw ParameterError("known node index out of range");
    if (have[pos]) throw ParameterError("duplicate known node index");
    have[pos] = true;
  }
  if (int(known.size()) < p.k)
    throw ParameterError("reconstruction needs at least k known nodes");
  std::vector<int> erased;
  for (int pos = 0; pos < p.n; ++pos)
    if (!have[pos]) erased.push_back(pos);
  return erased;
}

}  // namespace

FlatCodeword encode_flat(const SystemParams& p, const Field& f, const Message& msg) {
  if (p.construction != Construction::grouped)
    throw ParameterError("encode_flat requires grouped parameters");
  if (msg.size() != p.B) throw ParameterError("message must hold exactly k*l symbols");
  return encode_instance(p, f, msg, 0, p.base_rows());
}

StackedCodeword encode_stacked(const SystemParams& p, const Field& f, const Message& msg) {
  if (p.construction != Construction::stacked)
    throw ParameterError("encode_stacked requires stacked parameters");
  if (msg.size() != p.B) throw ParameterError("message must hold exactly k*l symbols");
  StackedCodeword cw;
  const std::uint32_t rows = p.base_rows();
  for (int y = 0; y < p.instances(); ++y)
    cw.instances.push_back(encode_instance(p, f, msg, y, rows));
  return cw;
}

bool parity_check(const SystemParams& p, const Field& f, const FlatCodeword& cw) {
  if (cw.n != p.n || cw.rows != p.base_rows())
    throw ParameterError("codeword shape does not match parameters");
  return parity_check_instance(p, f, cw);
}

bool parity_check(const SystemParams& p, const Field& f, const StackedCodeword& cw) {
  if (int(cw.instances.size()) != p.instances())
    throw ParameterError("codeword instance count does not match parameters");
  for (const FlatCodeword& inst : cw.instances) {
    if (inst.n != p.n || inst.rows != p.base_rows())
      throw ParameterError("codeword shape does not match parameters");
    if (!parity_check_instance(p, f, inst)) return false;
  }
  return true;
}

FlatCodeword reconstruct(const SystemParams& p, const Field& f, const FlatCodeword& cw,
                         const std::vector<int>& known) {
  std::vector<int> erased = erased_from_known(p, known);
  FlatCodeword out = cw;
  std::vector<Symbol> row(p.n);
  for (std::uint32_t a = 0; a < cw.rows; ++a) {
    for (int pos = 0; pos < p.n; ++pos) row[pos] = out.at(pos, a);
    recover_row(p, f, row, erased, a);
    for (int pos : erased) out.at(pos, a) = row[pos];
  }
  return out;
}

StackedCodeword reconstruct(const SystemParams& p, const Field& f, const StackedCodeword& cw,
                            const std::vector<int>& known) {
  StackedCodeword out;
  for (const FlatCodeword& inst : cw.instances) {
    std::vector<int> erased = erased_from_known(p, known);
    FlatCodeword fixed = inst;
    std::vector<Symbol> row(p.n);
    for (std::uint32_t a = 0; a < inst.rows; ++a) {
      for (int pos = 0; pos < p.n; ++pos) row[pos] = fixed.at(pos, a);
      recover_row(p, f, row, erased, a);
      for (int pos : erased) fixed.at(pos, a) = row[pos];
    }
    out.instances.push_back(std::move(fixed));
  }
  return out;
}

}  // namespace rackcode
