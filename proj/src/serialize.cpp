#include "rackcode/serialize.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace rackcode {

namespace {

constexpr char kMagic[8] = {'R', 'A', 'C', 'K', 'C', 'W', '0', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<unsigned char, 4> b{static_cast<unsigned char>(v),
                                 static_cast<unsigned char>(v >> 8),
                                 static_cast<unsigned char>(v >> 16),
                                 static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b.data()), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, std::uint32_t(v));
  put_u32(out, std::uint32_t(v >> 32));
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw ParameterError("truncated codeword stream");
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
         std::uint32_t(b[3]) << 24;
}

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t lo = get_u32(in);
  std::uint64_t hi = get_u32(in);
  return lo | hi << 32;
}

void write_header(std::ostream& out, const SystemParams& p, Symbol q) {
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, p.construction == Construction::stacked ? 0 : 1);
  put_u32(out, std::uint32_t(p.n));
  put_u32(out, std::uint32_t(p.u));
  put_u32(out, std::uint32_t(p.k));
  put_u32(out, std::uint32_t(p.h));
  put_u32(out, std::uint32_t(p.hbar));
  put_u32(out, std::uint32_t(p.delta));
  put_u32(out, std::uint32_t(p.dbar));
  put_u32(out, q);
  put_u64(out, p.l);
}

}  // namespace

void write_codeword(std::ostream& out, const SystemParams& p, Symbol q,
                    const StackedCodeword& cw) {
  write_header(out, p, q);
  const std::uint32_t rows = p.base_rows();
  for (int node = 0; node < p.n; ++node)
    for (int y = 0; y < p.instances(); ++y)
      for (std::uint32_t a = 0; a < rows; ++a) put_u32(out, cw.instances[y].at(node, a));
}

void write_codeword(std::ostream& out, const SystemParams& p, Symbol q,
                    const FlatCodeword& cw) {
  write_header(out, p, q);
  for (int node = 0; node < p.n; ++node)
    for (std::uint32_t a = 0; a < cw.rows; ++a) put_u32(out, cw.at(node, a));
}

void write_codeword_file(const std::string& path, const SystemParams& p, Symbol q,
                         const StackedCodeword& cw) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  write_codeword(out, p, q, cw);
}

void write_codeword_file(const std::string& path, const SystemParams& p, Symbol q,
                         const FlatCodeword& cw) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  write_codeword(out, p, q, cw);
}

StoredCodeword read_codeword(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw ParameterError("not a codeword file (bad magic)");
  std::uint32_t ctag = get_u32(in);
  if (ctag > 1) throw ParameterError("unknown construction tag in codeword file");
  Construction c = ctag == 0 ? Construction::stacked : Construction::grouped;
  int n = int(get_u32(in)), u = int(get_u32(in)), k = int(get_u32(in)), h = int(get_u32(in));
  int hbar = int(get_u32(in)), delta = int(get_u32(in)), dbar = int(get_u32(in));
  Symbol q = get_u32(in);
  std::uint64_t l = get_u64(in);

  StoredCodeword sc;
  sc.params = validate(n, u, k, h, hbar, delta, dbar, c);
  sc.q = q;
  if (sc.params.l != l) throw ParameterError("codeword header l does not match parameters");
  const std::uint32_t rows = sc.params.base_rows();
  if (c == Construction::stacked) {
    sc.stacked.instances.assign(sc.params.instances(), FlatCodeword(n, rows));
    for (int node = 0; node < n; ++node)
      for (int y = 0; y < sc.params.instances(); ++y)
        for (std::uint32_t a = 0; a < rows; ++a) {
          Symbol s = get_u32(in);
          if (s >= q) throw ParameterError("codeword symbol out of field range");
          sc.stacked.instances[y].at(node, a) = s;
        }
  } else {
    sc.flat = FlatCodeword(n, rows);
    for (int node = 0; node < n; ++node)
      for (std::uint32_t a = 0; a < rows; ++a) {
        Symbol s = get_u32(in);
        if (s >= q) throw ParameterError("codeword symbol out of field range");
        sc.flat.at(node, a) = s;
      }
  }
  in.peek();
  if (!in.eof()) throw ParameterError("trailing bytes after codeword");
  return sc;
}

StoredCodeword read_codeword_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open file: " + path);
  return read_codeword(in);
}

Message read_message_file(const std::string& path, const SystemParams& p, Symbol q) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open file: " + path);
  Message msg(p.B);
  for (std::uint64_t i = 0; i < p.B; ++i) {
    Symbol s = get_u32(in);
    if (s >= q) throw ParameterError("message symbol out of field range");
    msg[i] = s;
  }
  in.peek();
  if (!in.eof()) throw ParameterError("message file longer than k*l symbols");
  return msg;
}

void write_message_file(const std::string& path, const Message& msg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  for (Symbol s : msg) put_u32(out, s);
}

}  // namespace rackcode
