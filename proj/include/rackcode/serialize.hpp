#pragma once

#include <iosfwd>
#include <string>

#include "rackcode/codeword.hpp"

namespace rackcode {

/// On-disk codeword: magic "RACKCW01", then construction/n/u/k/h/hbar/delta/
/// dbar/q as little-endian u32 and l as u64, then n node columns of l
/// little-endian u32 symbols (stacked rows ordered instance-major: y*rows+a).
struct StoredCodeword {
  SystemParams params;
  Symbol q = 0;
  StackedCodeword stacked;  // filled iff params.construction == stacked
  FlatCodeword flat;        // filled iff params.construction == grouped
};

void write_codeword(std::ostream& out, const SystemParams& p, Symbol q,
                    const StackedCodeword& cw);
void write_codeword(std::ostream& out, const SystemParams& p, Symbol q,
                    const FlatCodeword& cw);
void write_codeword_file(const std::string& path, const SystemParams& p, Symbol q,
                         const StackedCodeword& cw);
void write_codeword_file(const std::string& path, const SystemParams& p, Symbol q,
                         const FlatCodeword& cw);

StoredCodeword read_codeword(std::istream& in);
StoredCodeword read_codeword_file(const std::string& path);

/// Raw message file: exactly k*l little-endian u32 symbols, each < q.
Message read_message_file(const std::string& path, const SystemParams& p, Symbol q);
void write_message_file(const std::string& path, const Message& msg);

}  // namespace rackcode
