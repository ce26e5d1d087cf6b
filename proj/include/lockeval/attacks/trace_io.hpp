#ifndef LOCKEVAL_ATTACKS_TRACE_IO_HPP
#define LOCKEVAL_ATTACKS_TRACE_IO_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lockeval/attacks/miter_attack.hpp"

namespace lockeval {

/// CSV: header "iter,elapsed_s,x_hex,y_hex,key_hex", one row per iteration
/// (key_hex empty when not traced), then a footer row
/// "<TERMINATED|TIMEOUT>,<final_key_hex>".
std::string serialize_trace(const AttackTrace& trace);

/// Inverse of serialize_trace; widths are needed to decode hex fields.
AttackTrace parse_trace(std::string_view csv, std::size_t n_inputs, std::size_t n_outputs, std::size_t key_width);

/// The (x, y) columns of a trace CSV, usable as a ReplayOracle log.
std::vector<IoPair> parse_replay_log(std::string_view csv, std::size_t n_inputs, std::size_t n_outputs);

void write_trace(const std::filesystem::path& path, const AttackTrace& trace);

}  // namespace lockeval

#endif
