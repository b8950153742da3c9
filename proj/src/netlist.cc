// Copyright 2026 The htxai Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "htxai/netlist.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "htxai/error.h"
#include "htxai/file_util.h"

namespace htxai {

// ---------------------------------------------------------------------------
// CellLibrary

void CellLibrary::Add(const std::string& name, CellType cell) {
  if (name.empty()) throw Error(ErrorCode::kMalformedLibrary, "empty cell name");
  if (cell.input_pins.empty()) {
    throw Error(ErrorCode::kMalformedLibrary, name + " has no input pins");
  }
  if (cell.output_pin.empty()) {
    throw Error(ErrorCode::kMalformedLibrary, name + " has no output pin");
  }
  std::set<std::string> pins(cell.input_pins.begin(), cell.input_pins.end());
  if (pins.size() != cell.input_pins.size() || pins.count(cell.output_pin)) {
    throw Error(ErrorCode::kMalformedLibrary, name + " has duplicate pins");
  }
  if (!entries_.emplace(name, std::move(cell)).second) {
    throw Error(ErrorCode::kMalformedLibrary, "duplicate cell type " + name);
  }
}

const CellType* CellLibrary::Find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

CellLibrary CellLibrary::Default() {
  static const char* kPins[] = {"A", "B", "C", "D"};
  CellLibrary lib;
  for (const char* base : {"AND", "OR", "NAND", "NOR", "XOR", "XNOR"}) {
    for (int arity = 2; arity <= 4; ++arity) {
      CellType cell;
      cell.input_pins.assign(kPins, kPins + arity);
      cell.output_pin = "Y";
      lib.Add(std::string(base) + std::to_string(arity), std::move(cell));
    }
  }
  lib.Add("INV", {{"A"}, "Y", false, true});
  lib.Add("BUF", {{"A"}, "Y", false, true});
  lib.Add("MUX2", {{"A", "B", "S"}, "Y", false, false});
  lib.Add("DFF", {{"D", "CK"}, "Q", true, false});
  lib.Add(std::string(kAssignCell), {{"A"}, "Y", false, true});
  return lib;
}

CellLibrary CellLibrary::FromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedLibrary, e.what());
  }
  if (!doc.is_object() || !doc.contains("cells") || !doc["cells"].is_object()) {
    throw Error(ErrorCode::kMalformedLibrary, "expected {\"cells\": {...}}");
  }
  CellLibrary lib;
  try {
    for (const auto& [name, entry] : doc["cells"].items()) {
      CellType cell;
      cell.input_pins = entry.at("inputs").get<std::vector<std::string>>();
      cell.output_pin = entry.at("output").get<std::string>();
      cell.is_flip_flop = entry.value("flip_flop", false);
      cell.is_buffer_or_inverter = entry.value("buffer", false);
      lib.Add(name, std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedLibrary, e.what());
  }
  if (!lib.Contains(kAssignCell)) {
    lib.Add(std::string(kAssignCell), {{"A"}, "Y", false, true});
  }
  return lib;
}

CellLibrary CellLibrary::FromFile(const std::string& path) {
  return FromJson(ReadTextFile(path));
}

std::string CellLibrary::ToJson() const {
  nlohmann::ordered_json cells = nlohmann::ordered_json::object();
  for (const auto& [name, cell] : entries_) {
    if (name == kAssignCell) continue;  // implicit in every library
    cells[name] = {{"inputs", cell.input_pins},
                   {"output", cell.output_pin},
                   {"flip_flop", cell.is_flip_flop},
                   {"buffer", cell.is_buffer_or_inverter}};
  }
  nlohmann::ordered_json doc;
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

std::string Netlist::OutputNet(const Instance& inst,
                               const CellLibrary& lib) const {
  const CellType* cell = lib.Find(inst.cell_type);
  if (cell == nullptr) return {};
  for (const auto& [pin, net] : inst.connections) {
    if (pin == cell->output_pin) return net;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { kIdent, kNumber, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
  bool escaped = false;
};

[[noreturn]] void Fail(ErrorCode code, const Token& at, const std::string& msg) {
  std::ostringstream ss;
  ss << "line " << at.line << ", column " << at.column << ": " << msg;
  throw Error(code, ss.str());
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    for (;;) {
      SkipSpaceAndComments();
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(tok);
        return out;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        tok.kind = Tok::kIdent;
        while (pos_ < text_.size() && IsIdentChar(text_[pos_])) Advance(tok);
      } else if (c == '\\') {
        tok.kind = Tok::kIdent;
        tok.escaped = true;
        Bump();
        while (pos_ < text_.size() &&
               !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          Advance(tok);
        }
        if (tok.text.empty()) Fail(ErrorCode::kSyntaxError, tok, "empty escaped identifier");
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
        tok.kind = Tok::kNumber;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '\'' || text_[pos_] == '_')) {
          Advance(tok);
        }
      } else if (c == '`') {
        Fail(ErrorCode::kUnsupportedConstruct, tok, "compiler directives are not supported");
      } else {
        tok.kind = Tok::kPunct;
        Advance(tok);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  static bool IsIdentChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  }

  void Bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void Advance(Token& tok) {
    tok.text.push_back(text_[pos_]);
    Bump();
  }

  void SkipSpaceAndComments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        Bump();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Bump();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        Token start{Tok::kPunct, "", line_, column_};
        Bump();
        Bump();
        while (pos_ + 1 < text_.size() &&
               !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
          Bump();
        }
        if (pos_ + 1 >= text_.size()) Fail(ErrorCode::kSyntaxError, start, "unterminated comment");
        Bump();
        Bump();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string, std::less<>> kBehavioralKeywords = {
    "always", "initial",   "reg",     "parameter", "localparam", "function",
    "task",   "generate",  "integer", "real",      "supply0",    "supply1",
    "tri",    "specify",   "defparam", "genvar",   "event",      "time"};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const CellLibrary& lib)
      : toks_(std::move(tokens)), lib_(lib) {}

  Netlist Run() {
    ExpectKeyword("module");
    netlist_.module_name = ExpectIdent("module name");
    if (Peek().text == "#") Fail(ErrorCode::kUnsupportedConstruct, Peek(), "parameterized modules are not supported");
    if (AcceptPunct("(")) ParsePortList();
    ExpectPunct(";");
    while (!(Peek().kind == Tok::kIdent && Peek().text == "endmodule")) {
      if (Peek().kind == Tok::kEnd) Fail(ErrorCode::kSyntaxError, Peek(), "missing endmodule");
      ParseItem();
    }
    Next();
    if (Peek().kind != Tok::kEnd) {
      if (Peek().text == "module") {
        Fail(ErrorCode::kUnsupportedConstruct, Peek(), "multiple modules (hierarchy) are not supported");
      }
      Fail(ErrorCode::kSyntaxError, Peek(), "unexpected text after endmodule");
    }
    for (const auto& port : header_ports_) {
      if (!declared_ports_.count(port)) {
        Fail(ErrorCode::kSyntaxError, header_port_tokens_.at(port), "port '" + port + "' has no direction declaration");
      }
    }
    return std::move(netlist_);
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool AcceptPunct(std::string_view p) {
    if (Peek().kind == Tok::kPunct && Peek().text == p) {
      Next();
      return true;
    }
    return false;
  }
  void ExpectPunct(std::string_view p) {
    if (!AcceptPunct(p)) {
      Fail(ErrorCode::kSyntaxError, Peek(), "expected '" + std::string(p) + "' but found '" + Describe(Peek()) + "'");
    }
  }
  void ExpectKeyword(std::string_view kw) {
    if (Peek().kind != Tok::kIdent || Peek().escaped || Peek().text != kw) {
      Fail(ErrorCode::kSyntaxError, Peek(), "expected '" + std::string(kw) + "'");
    }
    Next();
  }
  std::string ExpectIdent(const std::string& what) {
    if (Peek().kind != Tok::kIdent) {
      Fail(ErrorCode::kSyntaxError, Peek(), "expected " + what + " but found '" + Describe(Peek()) + "'");
    }
    return Next().text;
  }
  static std::string Describe(const Token& t) {
    return t.kind == Tok::kEnd ? "end of input" : t.text;
  }
  bool IsKeyword(const Token& t, std::string_view kw) const {
    return t.kind == Tok::kIdent && !t.escaped && t.text == kw;
  }

  int ParseInt() {
    const Token& t = Peek();
    if (t.kind != Tok::kNumber || t.text.find('\'') != std::string::npos) {
      Fail(ErrorCode::kSyntaxError, t, "expected integer");
    }
    Next();
    return std::stoi(t.text);
  }

  // [msb:lsb] -> bit indices in declaration order.
  std::optional<std::vector<int>> ParseRange() {
    if (!AcceptPunct("[")) return std::nullopt;
    const int msb = ParseInt();
    ExpectPunct(":");
    const int lsb = ParseInt();
    ExpectPunct("]");
    std::vector<int> bits;
    const int step = msb >= lsb ? -1 : 1;
    for (int i = msb;; i += step) {
      bits.push_back(i);
      if (i == lsb) break;
    }
    return bits;
  }

  void ParsePortList() {
    if (AcceptPunct(")")) return;
    const bool ansi = IsKeyword(Peek(), "input") || IsKeyword(Peek(), "output") ||
                      IsKeyword(Peek(), "inout");
    if (ansi) {
      for (;;) {
        ParseDirectionGroup(/*ansi=*/true);
        if (AcceptPunct(")")) return;
        ExpectPunct(",");
      }
    }
    for (;;) {
      const Token& t = Peek();
      std::string name = ExpectIdent("port name");
      header_ports_.push_back(name);
      header_port_tokens_.emplace(name, t);
      if (AcceptPunct(")")) return;
      ExpectPunct(",");
    }
  }

  // input|output [wire] [range] a, b, ...  In ANSI mode a group ends at the
  // next direction keyword or ')'.
  void ParseDirectionGroup(bool ansi) {
    const Token& dir_tok = Next();
    if (dir_tok.text == "inout") Fail(ErrorCode::kUnsupportedConstruct, dir_tok, "inout ports are not supported");
    const bool is_input = dir_tok.text == "input";
    if (IsKeyword(Peek(), "reg")) Fail(ErrorCode::kUnsupportedConstruct, Peek(), "reg declarations are behavioral");
    if (IsKeyword(Peek(), "wire")) Next();
    auto range = ParseRange();
    for (;;) {
      const Token& name_tok = Peek();
      const std::string base = ExpectIdent("port name");
      declared_ports_.insert(base);
      for (const auto& net : Expand(base, range)) {
        auto& list = is_input ? netlist_.primary_inputs : netlist_.primary_outputs;
        if (!port_nets_.insert(net).second) {
          Fail(ErrorCode::kSyntaxError, name_tok, "port '" + net + "' declared twice");
        }
        list.push_back(net);
      }
      DeclareVector(range.has_value(), base);
      if (ansi) {
        if (Peek().text == "," && Peek(1).kind == Tok::kIdent && !IsKeyword(Peek(1), "input") &&
            !IsKeyword(Peek(1), "output") && !IsKeyword(Peek(1), "inout")) {
          Next();
          continue;
        }
        return;
      }
      if (AcceptPunct(",")) continue;
      ExpectPunct(";");
      return;
    }
  }

  static std::vector<std::string> Expand(const std::string& base,
                                         const std::optional<std::vector<int>>& range) {
    if (!range) return {base};
    std::vector<std::string> out;
    for (int bit : *range) out.push_back(base + "[" + std::to_string(bit) + "]");
    return out;
  }

  void DeclareVector(bool is_vector, const std::string& base) {
    if (is_vector) vectors_.insert(base);
  }

  void ParseWire() {
    Next();
    auto range = ParseRange();
    for (;;) {
      const std::string base = ExpectIdent("wire name");
      DeclareVector(range.has_value(), base);
      if (AcceptPunct(",")) continue;
      ExpectPunct(";");
      return;
    }
  }

  // ident | ident[bit]
  std::string ParseNetRef() {
    const Token& t = Peek();
    if (t.kind == Tok::kNumber) Fail(ErrorCode::kUnsupportedConstruct, t, "constant '" + t.text + "' used as a net");
    if (t.kind == Tok::kPunct && t.text == "{") Fail(ErrorCode::kUnsupportedConstruct, t, "concatenations are not supported");
    std::string name = ExpectIdent("net name");
    if (AcceptPunct("[")) {
      const int bit = ParseInt();
      if (Peek().text == ":") Fail(ErrorCode::kUnsupportedConstruct, Peek(), "part selects are not supported");
      ExpectPunct("]");
      return name + "[" + std::to_string(bit) + "]";
    }
    if (vectors_.count(name)) Fail(ErrorCode::kUnsupportedConstruct, t, "vector '" + name + "' connected as a scalar");
    return name;
  }

  void ParseAssign() {
    const Token& kw = Next();
    for (;;) {
      Instance inst;
      inst.cell_type = std::string(CellLibrary::kAssignCell);
      inst.name = "$assign" + std::to_string(assign_count_++);
      inst.source_line = kw.line;
      const std::string lhs = ParseNetRef();
      ExpectPunct("=");
      const std::string rhs = ParseNetRef();
      if (!(Peek().text == ";" || Peek().text == ",")) {
        Fail(ErrorCode::kUnsupportedConstruct, Peek(), "only net-to-net assignments are supported");
      }
      inst.connections = {{"A", rhs}, {"Y", lhs}};
      AddInstance(std::move(inst), kw);
      if (AcceptPunct(",")) continue;
      ExpectPunct(";");
      return;
    }
  }

  void ParseInstantiation() {
    const Token& type_tok = Next();
    const CellType* cell = lib_.Find(type_tok.text);
    if (cell == nullptr) Fail(ErrorCode::kUnknownCell, type_tok, "cell type '" + type_tok.text + "' is not in the library");
    if (Peek().text == "#") Fail(ErrorCode::kUnsupportedConstruct, Peek(), "parameter overrides are not supported");
    for (;;) {
      const Token& name_tok = Peek();
      Instance inst;
      inst.cell_type = type_tok.text;
      inst.name = ExpectIdent("instance name");
      inst.source_line = name_tok.line;
      ExpectPunct("(");
      std::set<std::string> seen_pins;
      if (!AcceptPunct(")")) {
        for (;;) {
          if (!AcceptPunct(".")) Fail(ErrorCode::kUnsupportedConstruct, Peek(), "positional port connections are not supported");
          const Token& pin_tok = Peek();
          std::string pin = ExpectIdent("pin name");
          const bool known = pin == cell->output_pin ||
                             std::find(cell->input_pins.begin(), cell->input_pins.end(), pin) !=
                                 cell->input_pins.end();
          if (!known) Fail(ErrorCode::kUnknownPin, pin_tok, "cell '" + type_tok.text + "' has no pin '" + pin + "'");
          if (!seen_pins.insert(pin).second) Fail(ErrorCode::kSyntaxError, pin_tok, "pin '" + pin + "' connected twice");
          ExpectPunct("(");
          if (!AcceptPunct(")")) {
            std::string net = ParseNetRef();
            ExpectPunct(")");
            inst.connections.emplace_back(std::move(pin), std::move(net));
          }
          if (AcceptPunct(")")) break;
          ExpectPunct(",");
        }
      }
      if (!seen_pins.count(cell->output_pin) ||
          std::none_of(inst.connections.begin(), inst.connections.end(),
                       [&](const auto& c) { return c.first == cell->output_pin; })) {
        Fail(ErrorCode::kSyntaxError, name_tok, "instance '" + inst.name + "' leaves output pin '" + cell->output_pin + "' unconnected");
      }
      AddInstance(std::move(inst), name_tok);
      if (AcceptPunct(",")) continue;
      ExpectPunct(";");
      return;
    }
  }

  void AddInstance(Instance inst, const Token& at) {
    if (!instance_names_.insert(inst.name).second) {
      Fail(ErrorCode::kSyntaxError, at, "duplicate instance name '" + inst.name + "'");
    }
    netlist_.instances.push_back(std::move(inst));
  }

  void ParseItem() {
    const Token& t = Peek();
    if (t.kind != Tok::kIdent) Fail(ErrorCode::kSyntaxError, t, "unexpected '" + Describe(t) + "'");
    if (!t.escaped) {
      if (t.text == "input" || t.text == "output" || t.text == "inout") {
        ParseDirectionGroup(/*ansi=*/false);
        return;
      }
      if (t.text == "wire") {
        ParseWire();
        return;
      }
      if (t.text == "assign") {
        ParseAssign();
        return;
      }
      if (t.text == "module") Fail(ErrorCode::kUnsupportedConstruct, t, "nested modules are not supported");
      if (kBehavioralKeywords.count(t.text)) {
        Fail(ErrorCode::kUnsupportedConstruct, t, "behavioral construct '" + t.text + "' is not supported");
      }
    }
    ParseInstantiation();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const CellLibrary& lib_;
  Netlist netlist_;
  std::vector<std::string> header_ports_;
  std::map<std::string, Token> header_port_tokens_;
  std::set<std::string> declared_ports_;
  std::set<std::string> port_nets_;
  std::set<std::string> vectors_;
  std::set<std::string> instance_names_;
  int assign_count_ = 0;
};

void Validate(const Netlist& netlist, const CellLibrary& lib) {
  std::unordered_map<std::string, std::string> driver;
  for (const auto& pi : netlist.primary_inputs) driver.emplace(pi, "primary input");
  for (const auto& inst : netlist.instances) {
    const CellType* cell = lib.Find(inst.cell_type);
    if (cell == nullptr) {
      throw Error(ErrorCode::kUnknownCell, "line " + std::to_string(inst.source_line) +
                                               ": cell type '" + inst.cell_type + "'");
    }
    for (const auto& [pin, net] : inst.connections) {
      if (pin != cell->output_pin) continue;
      auto [it, inserted] = driver.emplace(net, "instance " + inst.name);
      if (!inserted) {
        throw Error(ErrorCode::kMultipleDrivers,
                    "line " + std::to_string(inst.source_line) + ": net '" + net +
                        "' driven by " + it->second + " and instance " + inst.name);
      }
    }
  }
  auto require = [&](const std::string& net, const std::string& where) {
    if (!driver.count(net)) {
      throw Error(ErrorCode::kUndrivenNet, "net '" + net + "' (" + where +
                                               ") has no driver and is not a primary input");
    }
  };
  for (const auto& inst : netlist.instances) {
    const CellType* cell = lib.Find(inst.cell_type);
    for (const auto& [pin, net] : inst.connections) {
      if (pin == cell->output_pin) continue;
      require(net, "line " + std::to_string(inst.source_line) + ", " + inst.name + "." + pin);
    }
  }
  for (const auto& po : netlist.primary_outputs) require(po, "primary output");
}

bool IsSimpleIdentifier(std::string_view s) {
  static const std::set<std::string, std::less<>> kReserved = {
      "module", "endmodule", "input", "output", "inout", "wire", "assign",
      "always", "initial",   "reg"};
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')) return false;
  }
  return !kReserved.count(s);
}

std::string Ident(std::string_view s) {
  if (IsSimpleIdentifier(s)) return std::string(s);
  return "\\" + std::string(s) + " ";
}

}  // namespace

Netlist ParseNetlist(std::string_view text, const CellLibrary& library) {
  Parser parser(Lexer(text).Run(), library);
  Netlist netlist = parser.Run();
  Validate(netlist, library);
  return netlist;
}

Netlist ParseNetlistFile(const std::string& path, const CellLibrary& library) {
  return ParseNetlist(ReadTextFile(path), library);
}

std::string EmitNetlist(const Netlist& netlist, const CellLibrary& library) {
  std::ostringstream out;
  out << "module " << Ident(netlist.module_name) << " (";
  bool first = true;
  for (const auto* ports : {&netlist.primary_inputs, &netlist.primary_outputs}) {
    for (const auto& p : *ports) {
      out << (first ? "" : ", ") << Ident(p);
      first = false;
    }
  }
  out << ");\n";
  for (const auto& p : netlist.primary_inputs) out << "  input " << Ident(p) << ";\n";
  for (const auto& p : netlist.primary_outputs) out << "  output " << Ident(p) << ";\n";

  std::set<std::string> ports(netlist.primary_inputs.begin(), netlist.primary_inputs.end());
  ports.insert(netlist.primary_outputs.begin(), netlist.primary_outputs.end());
  std::set<std::string> wires;
  for (const auto& inst : netlist.instances) {
    for (const auto& [pin, net] : inst.connections) {
      if (!ports.count(net)) wires.insert(net);
    }
  }
  for (const auto& w : wires) out << "  wire " << Ident(w) << ";\n";

  for (const auto& inst : netlist.instances) {
    if (inst.cell_type == CellLibrary::kAssignCell) {
      std::string lhs, rhs;
      for (const auto& [pin, net] : inst.connections) (pin == "Y" ? lhs : rhs) = net;
      out << "  assign " << Ident(lhs) << " = " << Ident(rhs) << ";\n";
      continue;
    }
    out << "  " << Ident(inst.cell_type) << " " << Ident(inst.name) << " (";
    for (std::size_t i = 0; i < inst.connections.size(); ++i) {
      out << (i ? ", " : "") << "." << inst.connections[i].first << "("
          << Ident(inst.connections[i].second) << ")";
    }
    out << ");\n";
  }
  out << "endmodule\n";
  (void)library;
  return out.str();
}

LabelMap LoadLabels(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedLabelFile, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kMalformedLabelFile, "top level must be an object");
  LabelMap labels;
  for (const auto& [circuit, nets] : doc.items()) {
    if (!nets.is_array()) {
      throw Error(ErrorCode::kMalformedLabelFile, "labels for '" + circuit + "' must be an array");
    }
    auto& set = labels[circuit];
    for (const auto& net : nets) {
      if (!net.is_string()) {
        throw Error(ErrorCode::kMalformedLabelFile, "non-string net in '" + circuit + "'");
      }
      set.insert(net.get<std::string>());
    }
  }
  return labels;
}

LabelMap LoadLabelsFile(const std::string& path) {
  return LoadLabels(ReadTextFile(path));
}

std::string DumpLabels(const LabelMap& labels) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [circuit, nets] : labels) {
    doc[circuit] = std::vector<std::string>(nets.begin(), nets.end());
  }
  return doc.dump(2) + "\n";
}

}  // namespace htxai
