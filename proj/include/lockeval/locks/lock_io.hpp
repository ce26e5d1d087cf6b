#ifndef LOCKEVAL_LOCKS_LOCK_IO_HPP
#define LOCKEVAL_LOCKS_LOCK_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval {

/// BENCH text with a leading "# LOCK kind=<k> width=<w> seed=<s>" line, the
/// seed taken from metadata["seed"]. The key is never written into the netlist.
std::string serialize_locked(const LockedCircuit& cl);

/// Parses a locked netlist; key width comes from the key_* inputs and the kind
/// from the LOCK header (XOR if absent). `key_hex` may be empty, in which case
/// the correct key is left all-zero and metadata["key_known"] = "0".
LockedCircuit parse_locked(std::string_view bench_text, std::string_view key_hex, const std::string& name = "locked");

/// `<stem>.key` next to the netlist.
std::filesystem::path key_path_for(const std::filesystem::path& bench_path);

/// Writes the netlist and its key sidecar.
void write_locked(const std::filesystem::path& bench_path, const LockedCircuit& cl);
/// Reads the netlist and the key from `key_path` (default: the sidecar, if present).
LockedCircuit read_locked(const std::filesystem::path& bench_path, const std::filesystem::path& key_path = {});

BitVector read_key_file(const std::filesystem::path& path, std::size_t width);

}  // namespace lockeval

#endif
