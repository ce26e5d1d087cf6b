#include "lockeval/netlist/bench.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "lockeval/error.hpp"

namespace lockeval {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && ch != '_' && ch != '.' && ch != '[' && ch != ']') return false;
  }
  return true;
}

/// Splits "KIND(a, b, c)" into KIND and argument names.
bool split_call(std::string_view text, std::string_view& head, std::vector<std::string_view>& args) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') return false;
  head = trim(text.substr(0, open));
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  args.clear();
  if (trim(inner).empty()) return true;
  while (true) {
    const auto comma = inner.find(',');
    args.push_back(trim(inner.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }
  return true;
}

}  // namespace

Circuit parse_bench(std::string_view text, std::string name) {
  Circuit c(std::move(name));
  // First line on which each net is referenced, for error reporting.
  std::unordered_map<std::string, std::size_t> first_use;
  std::vector<std::pair<std::string, std::size_t>> outputs;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::string_view head;
    std::vector<std::string_view> args;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      if (!split_call(line, head, args) || args.size() != 1 || !valid_name(args[0])) {
        throw ParseError("expected INPUT(name), OUTPUT(name) or 'name = KIND(...)'", line_no);
      }
      std::string net(args[0]);
      if (head == "INPUT" || head == "input") {
        try {
          c.add_input(net);
        } catch (const CircuitError& e) {
          throw ParseError(e.what(), line_no);
        }
      } else if (head == "OUTPUT" || head == "output") {
        for (const auto& [o, l] : outputs) {
          if (o == net) throw ParseError("duplicate output '" + net + "'", line_no);
        }
        outputs.emplace_back(net, line_no);
      } else {
        throw ParseError("unknown declaration '" + std::string(head) + "'", line_no);
      }
      continue;
    }

    const std::string_view lhs = trim(line.substr(0, eq));
    if (!valid_name(lhs)) throw ParseError("invalid net name '" + std::string(lhs) + "'", line_no);
    if (!split_call(trim(line.substr(eq + 1)), head, args)) {
      throw ParseError("expected KIND(arg, ...) after '='", line_no);
    }
    const auto kind = gate_kind_from_string(head);
    if (!kind || *kind == GateKind::Input) {
      throw ParseError("unknown gate kind '" + std::string(head) + "'", line_no);
    }
    std::vector<std::string> fanins;
    for (auto a : args) {
      if (!valid_name(a)) throw ParseError("invalid net name '" + std::string(a) + "'", line_no);
      fanins.emplace_back(a);
      first_use.try_emplace(fanins.back(), line_no);
    }
    try {
      c.add_gate(std::string(lhs), *kind, std::move(fanins));
    } catch (const CircuitError& e) {
      throw ParseError(e.what(), line_no);
    }
  }

  for (const auto& [net, line] : first_use) {
    if (!c.contains(net)) throw ParseError("undefined net '" + net + "'", line);
  }
  for (const auto& [net, line] : outputs) {
    if (!c.contains(net)) throw ParseError("undefined output net '" + net + "'", line);
    c.add_output(net);
  }
  return c;
}

Circuit read_bench(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bench(ss.str(), path.stem().string());
}

std::string serialize_bench(const Circuit& c) {
  std::ostringstream out;
  out << "# " << c.name() << "\n";
  for (const auto& i : c.inputs()) out << "INPUT(" << i << ")\n";
  out << "\n";
  for (const auto& o : c.outputs()) out << "OUTPUT(" << o << ")\n";
  out << "\n";
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Input) continue;
    out << g.name << " = " << to_string(g.kind) << "(";
    for (std::size_t i = 0; i < g.fanins.size(); ++i) {
      if (i) out << ", ";
      out << g.fanins[i];
    }
    out << ")\n";
  }
  return out.str();
}

void write_bench(const std::filesystem::path& path, const Circuit& c) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_bench(c);
}

}  // namespace lockeval
