#include "lockeval/locks/lock_io.hpp"

#include <fstream>
#include <sstream>

#include "lockeval/error.hpp"
#include "lockeval/netlist/bench.hpp"

namespace lockeval {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

/// key=value fields of the "# LOCK" header, if present.
std::map<std::string, std::string> lock_header(std::string_view text) {
  std::map<std::string, std::string> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string hash;
    std::string tag;
    if (!(ls >> hash >> tag) || hash != "#" || tag != "LOCK") continue;
    std::string kv;
    while (ls >> kv) {
      const auto eq = kv.find('=');
      if (eq != std::string::npos) fields[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    break;
  }
  return fields;
}

}  // namespace

std::string serialize_locked(const LockedCircuit& cl) {
  std::ostringstream out;
  out << "# LOCK kind=" << to_string(cl.kind) << " width=" << cl.key_width();
  if (auto it = cl.metadata.find("seed"); it != cl.metadata.end()) out << " seed=" << it->second;
  out << "\n" << serialize_bench(cl.circuit);
  return out.str();
}

LockedCircuit parse_locked(std::string_view bench_text, std::string_view key_hex, const std::string& name) {
  Circuit c = parse_bench(bench_text, name);
  const auto header = lock_header(bench_text);
  LockKind kind = LockKind::Xor;
  if (auto it = header.find("kind"); it != header.end()) {
    auto k = lock_kind_from_string(it->second);
    if (!k) throw LockError("unknown lock kind '" + it->second + "' in LOCK header");
    kind = *k;
  }
  std::size_t width = 0;
  for (const auto& in : c.inputs()) width += is_key_name(in) ? 1 : 0;
  if (auto it = header.find("width"); it != header.end() && it->second != std::to_string(width)) {
    throw LockError("LOCK header declares width " + it->second + " but the netlist has " + std::to_string(width) +
                    " key inputs");
  }
  BitVector key(width);
  bool known = false;
  if (!key_hex.empty()) {
    try {
      key = BitVector::from_hex(key_hex, width);
    } catch (const std::exception& e) {
      throw LockError(std::string("bad key: ") + e.what());
    }
    known = true;
  }
  LockedCircuit cl = make_locked(std::move(c), kind, std::move(key));
  if (auto it = header.find("seed"); it != header.end()) cl.metadata["seed"] = it->second;
  cl.metadata["key_known"] = known ? "1" : "0";
  return cl;
}

std::filesystem::path key_path_for(const std::filesystem::path& bench_path) {
  auto p = bench_path;
  p.replace_extension(".key");
  return p;
}

void write_locked(const std::filesystem::path& bench_path, const LockedCircuit& cl) {
  write_text(bench_path, serialize_locked(cl));
  write_text(key_path_for(bench_path), cl.correct_key.to_hex() + "\n");
}

BitVector read_key_file(const std::filesystem::path& path, std::size_t width) {
  std::istringstream in(read_text(path));
  std::string hex;
  if (!(in >> hex)) throw LockError("empty key file " + path.string());
  try {
    return BitVector::from_hex(hex, width);
  } catch (const std::exception& e) {
    throw LockError("bad key in " + path.string() + ": " + e.what());
  }
}

LockedCircuit read_locked(const std::filesystem::path& bench_path, const std::filesystem::path& key_path) {
  const std::string text = read_text(bench_path);
  std::filesystem::path kp = key_path.empty() ? key_path_for(bench_path) : key_path;
  std::string hex;
  if (!key_path.empty() || std::filesystem::exists(kp)) {
    std::istringstream in(read_text(kp));
    in >> hex;
    if (hex.empty()) throw LockError("empty key file " + kp.string());
  }
  return parse_locked(text, hex, bench_path.stem().string());
}

}  // namespace lockeval
