#ifndef LOCKEVAL_NETLIST_BENCH_HPP
#define LOCKEVAL_NETLIST_BENCH_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "lockeval/netlist/circuit.hpp"

namespace lockeval {

/// Parse ISCAS BENCH text.
///
///   INPUT(name)
///   OUTPUT(name)
///   name = KIND(arg1, ..., argN)
///
/// `#` starts a comment. KIND is one of AND NAND OR NOR XOR XNOR NOT BUF BUFF
/// MUX (plus CONST0/CONST1 with an empty argument list). BUFF is read as BUF.
/// Throws ParseError carrying the offending line number.
Circuit parse_bench(std::string_view text, std::string name = "circuit");
Circuit read_bench(const std::filesystem::path& path);

/// Inputs, then outputs, then gates in definition order.
std::string serialize_bench(const Circuit& c);
void write_bench(const std::filesystem::path& path, const Circuit& c);

}  // namespace lockeval

#endif
