// Copyright 2026 The milpenv Authors
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

#include "milpenv/lp_format.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "milpenv/errors.h"

namespace milpenv {
namespace {

constexpr std::string_view kNameComment = "\\ Problem name: ";
constexpr int kTermsPerLine = 8;

bool IsNameStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) ||
         std::string_view("_!\"#$%&()/,;?@`'{}|~").find(c) !=
             std::string_view::npos;
}

bool IsNameChar(char c) {
  return IsNameStart(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '.';
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(c));
  return out;
}

bool IsInfinityWord(std::string_view s) {
  const std::string l = Lower(s);
  return l == "inf" || l == "infinity";
}

bool IsLegalName(const std::string& name) {
  if (name.empty() || !IsNameStart(name[0])) return false;
  if (IsInfinityWord(name) || Lower(name) == "free") return false;
  return std::all_of(name.begin(), name.end(), IsNameChar);
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Writer

namespace {

void WriteExpression(std::ostringstream& out, const std::vector<Term>& terms,
                     const std::vector<std::string>& names) {
  int on_line = 0;
  for (const Term& t : terms) {
    if (on_line == kTermsPerLine) {
      out << "\n  ";
      on_line = 0;
    }
    out << (std::signbit(t.coef) ? " - " : " + ")
        << FormatDouble(std::fabs(t.coef)) << ' ' << names[t.var];
    ++on_line;
  }
}

}  // namespace

std::string WriteLpString(const Problem& problem) {
  ValidateOrThrow(problem);
  for (const std::string& name : problem.var_names) {
    if (!IsLegalName(name)) {
      throw InvalidProblemError("variable name '" + name +
                                "' is not a legal LP identifier");
    }
  }
  for (const Constraint& row : problem.constraints) {
    if (!IsLegalName(row.name)) {
      throw InvalidProblemError("constraint name '" + row.name +
                                "' is not a legal LP identifier");
    }
  }
  if (problem.name.find('\n') != std::string::npos) {
    throw InvalidProblemError("problem name contains a newline");
  }

  std::ostringstream out;
  out << kNameComment << problem.name << '\n';
  out << (problem.maximize ? "Maximize" : "Minimize") << '\n';
  // Every variable is listed in the objective (zero coefficients included)
  // so that reading the file back yields the same variable order.
  std::vector<Term> obj;
  obj.reserve(problem.num_vars());
  for (int j = 0; j < problem.num_vars(); ++j) {
    obj.push_back({j, problem.ReportedObjective(problem.objective[j])});
  }
  out << " obj:";
  WriteExpression(out, obj, problem.var_names);
  out << '\n';

  out << "Subject To\n";
  for (const Constraint& row : problem.constraints) {
    out << ' ' << row.name << ':';
    if (row.terms.empty()) {
      out << " 0";
    } else {
      WriteExpression(out, row.terms, problem.var_names);
    }
    switch (row.relation) {
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
    }
    out << FormatDouble(row.rhs) << '\n';
  }

  out << "Bounds\n";
  for (int j = 0; j < problem.num_vars(); ++j) {
    const double lo = problem.var_lower[j];
    const double up = problem.var_upper[j];
    if (lo == -kInf && up == kInf) {
      out << ' ' << problem.var_names[j] << " free\n";
    } else {
      out << ' ' << FormatDouble(lo) << " <= " << problem.var_names[j]
          << " <= " << FormatDouble(up) << '\n';
    }
  }

  bool any_integer = false;
  for (int j = 0; j < problem.num_vars(); ++j) {
    if (!problem.is_integer[j]) continue;
    if (!any_integer) out << "Generals\n";
    any_integer = true;
    out << ' ' << problem.var_names[j] << '\n';
  }
  out << "End\n";
  return out.str();
}

std::size_t WriteLpFile(const Problem& problem,
                        const std::filesystem::path& path) {
  const std::string text = WriteLpString(problem);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw Error("write to '" + path.string() + "' failed");
  return text.size();
}

// ---------------------------------------------------------------------------
// Reader

namespace {

enum class Section {
  kNone,
  kObjective,
  kConstraints,
  kBounds,
  kGenerals,
  kBinaries,
  kEnd
};

enum class TokKind { kNumber, kName, kOp };

struct Token {
  TokKind kind;
  std::string text;
  double value = 0.0;
  int line = 0;
  int column = 0;
};

struct SectionBody {
  Section section;
  std::vector<Token> tokens;
};

std::optional<Section> SectionHeader(const std::string& lowered) {
  static const std::unordered_map<std::string, Section> kHeaders = {
      {"minimize", Section::kObjective},  {"minimum", Section::kObjective},
      {"min", Section::kObjective},       {"maximize", Section::kObjective},
      {"maximum", Section::kObjective},   {"max", Section::kObjective},
      {"subject to", Section::kConstraints},
      {"such that", Section::kConstraints}, {"st", Section::kConstraints},
      {"s.t.", Section::kConstraints},    {"bounds", Section::kBounds},
      {"bound", Section::kBounds},        {"generals", Section::kGenerals},
      {"general", Section::kGenerals},    {"gen", Section::kGenerals},
      {"integers", Section::kGenerals},   {"binaries", Section::kBinaries},
      {"binary", Section::kBinaries},     {"bin", Section::kBinaries},
      {"end", Section::kEnd},
  };
  auto it = kHeaders.find(lowered);
  if (it == kHeaders.end()) return std::nullopt;
  return it->second;
}

bool IsUnsupportedHeader(const std::string& lowered) {
  static const std::vector<std::string> kUnsupported = {
      "semi-continuous", "semi", "semis", "sos", "sos1", "sos2",
      "general constraints", "genconstraints", "pwlobj", "lazy constraints",
      "user cuts"};
  return std::find(kUnsupported.begin(), kUnsupported.end(), lowered) !=
         kUnsupported.end();
}

std::string CollapseSpaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
    } else {
      if (space) out += ' ';
      space = false;
      out += c;
    }
  }
  return out;
}

void Tokenize(std::string_view line, int line_no, std::vector<Token>& out) {
  std::size_t i = 0;
  auto col = [&](std::size_t pos) { return static_cast<int>(pos) + 1; };
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '^' || c == '[' || c == ']') {
      throw UnsupportedFeatureError("quadratic terms are not supported",
                                    line_no, col(i));
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      throw UnsupportedFeatureError("indicator constraints are not supported",
                                    line_no, col(i));
    }
    if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      std::size_t len = 1;
      if (i + 1 < line.size() && (line[i + 1] == '=' || line[i + 1] == '<' ||
                                  line[i + 1] == '>')) {
        op += line[i + 1];
        len = 2;
      }
      std::string norm;
      if (op == "<" || op == "<=" || op == "=<") {
        norm = "<=";
      } else if (op == ">" || op == ">=" || op == "=>") {
        norm = ">=";
      } else if (op == "=" || op == "==") {
        norm = "=";
      } else {
        throw LpParseError("unknown operator '" + op + "'", line_no, col(i));
      }
      out.push_back({TokKind::kOp, norm, 0.0, line_no, col(i)});
      i += len;
      continue;
    }
    if (c == '+' || c == '-' || c == ':') {
      out.push_back({TokKind::kOp, std::string(1, c), 0.0, line_no, col(i)});
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      auto res = std::from_chars(line.data() + i, line.data() + line.size(),
                                 value);
      if (res.ec != std::errc()) {
        throw LpParseError("malformed number", line_no, col(i));
      }
      const std::size_t len =
          static_cast<std::size_t>(res.ptr - line.data()) - i;
      out.push_back({TokKind::kNumber, std::string(line.substr(i, len)), value,
                     line_no, col(i)});
      i += len;
      continue;
    }
    if (IsNameStart(c)) {
      std::size_t j = i;
      while (j < line.size() && IsNameChar(line[j])) ++j;
      std::string name(line.substr(i, j - i));
      if (IsInfinityWord(name)) {
        out.push_back({TokKind::kNumber, name, kInf, line_no, col(i)});
      } else {
        out.push_back({TokKind::kName, name, 0.0, line_no, col(i)});
      }
      i = j;
      continue;
    }
    throw LpParseError(std::string("unexpected character '") + c + "'",
                       line_no, col(i));
  }
}

class LpReader {
 public:
  Problem Read(std::string_view text) {
    std::vector<SectionBody> sections = Split(text);
    for (const SectionBody& body : sections) {
      pos_ = 0;
      tokens_ = &body.tokens;
      switch (body.section) {
        case Section::kObjective:
          ParseObjective();
          break;
        case Section::kConstraints:
          ParseConstraints();
          break;
        case Section::kBounds:
          ParseBounds();
          break;
        case Section::kGenerals:
        case Section::kBinaries:
          ParseIntegers(body.section == Section::kBinaries);
          break;
        case Section::kNone:
          if (!body.tokens.empty()) {
            Fail("content before the objective section", body.tokens[0]);
          }
          break;
        case Section::kEnd:
          if (!body.tokens.empty()) {
            Fail("content after End", body.tokens[0]);
          }
          break;
      }
    }
    if (!seen_objective_) {
      throw LpParseError("missing objective section", last_line_, 1);
    }
    if (problem_.maximize) {
      for (double& c : problem_.objective) c = -c;
    }
    return std::move(problem_);
  }

 private:
  std::vector<SectionBody> Split(std::string_view text) {
    std::vector<SectionBody> sections;
    sections.push_back({Section::kNone, {}});
    int line_no = 0;
    std::size_t start = 0;
    bool first_line = true;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      last_line_ = line_no;
      start = end + 1;

      if (first_line && line.starts_with(kNameComment)) {
        problem_.name = std::string(line.substr(kNameComment.size()));
      }
      first_line = false;
      const std::size_t comment = line.find('\\');
      if (comment != std::string_view::npos) line = line.substr(0, comment);

      const std::string lowered = Lower(CollapseSpaces(line));
      if (lowered.empty()) {
        if (end == text.size()) break;
        continue;
      }
      if (std::optional<Section> header = SectionHeader(lowered)) {
        if (*header == Section::kObjective) {
          if (seen_objective_) {
            throw LpParseError("duplicate objective section", line_no, 1);
          }
          seen_objective_ = true;
          problem_.maximize = lowered.starts_with("max");
        }
        sections.push_back({*header, {}});
        if (*header == Section::kEnd) {
          // Anything after End is ignored, as in the reference format.
          break;
        }
        continue;
      }
      if (IsUnsupportedHeader(lowered)) {
        throw UnsupportedFeatureError(
            "section '" + CollapseSpaces(line) + "' is not supported", line_no,
            1);
      }
      Tokenize(line, line_no, sections.back().tokens);
      if (end == text.size()) break;
    }
    return sections;
  }

  [[noreturn]] void Fail(const std::string& message, const Token& at) const {
    throw LpParseError(message, at.line, at.column);
  }
  [[noreturn]] void FailAtEnd(const std::string& message) const {
    if (!tokens_->empty()) {
      const Token& last = tokens_->back();
      throw LpParseError(message, last.line,
                         last.column + static_cast<int>(last.text.size()));
    }
    throw LpParseError(message, last_line_, 1);
  }

  bool AtEnd() const { return pos_ >= tokens_->size(); }
  const Token& Peek(std::size_t ahead = 0) const {
    return (*tokens_)[pos_ + ahead];
  }
  bool HasAhead(std::size_t ahead) const {
    return pos_ + ahead < tokens_->size();
  }
  bool PeekOp(std::string_view op, std::size_t ahead = 0) const {
    return HasAhead(ahead) && Peek(ahead).kind == TokKind::kOp &&
           Peek(ahead).text == op;
  }
  bool PeekRelation() const {
    return PeekOp("<=") || PeekOp(">=") || PeekOp("=");
  }
  const Token& Next() {
    if (AtEnd()) FailAtEnd("unexpected end of section");
    return (*tokens_)[pos_++];
  }

  int VarIndex(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const int j = problem_.AddVariable(0.0, 0.0, kInf, false, name);
    index_.emplace(name, j);
    return j;
  }

  // Optional "name:" label.
  std::optional<std::string> Label() {
    if (HasAhead(1) && Peek().kind == TokKind::kName && PeekOp(":", 1)) {
      std::string name = Peek().text;
      pos_ += 2;
      return name;
    }
    return std::nullopt;
  }

  // Parses signed terms until a relation operator (constraints) or the end
  // of the section (objective). A lone constant 0 is accepted as the empty
  // expression.
  std::vector<Term> Expression(bool stop_at_relation) {
    std::vector<Term> terms;
    std::unordered_map<int, std::size_t> where;
    bool first = true;
    while (!AtEnd()) {
      if (stop_at_relation && PeekRelation()) break;
      if (!stop_at_relation && HasAhead(1) && Peek().kind == TokKind::kName &&
          PeekOp(":", 1)) {
        Fail("unexpected label in objective", Peek());
      }
      double sign = 1.0;
      bool had_sign = false;
      while (PeekOp("+") || PeekOp("-")) {
        if (Peek().text == "-") sign = -sign;
        had_sign = true;
        ++pos_;
      }
      if (!first && !had_sign) Fail("expected '+' or '-'", Peek());
      const Token& tok = Next();
      double coef = sign;
      if (tok.kind == TokKind::kNumber) {
        if (std::isinf(tok.value)) Fail("infinite coefficient", tok);
        coef = sign * tok.value;
        if (AtEnd() || Peek().kind != TokKind::kName) {
          if (tok.value == 0.0 && terms.empty() &&
              (AtEnd() || (stop_at_relation && PeekRelation()))) {
            first = false;
            continue;
          }
          Fail("constant terms are not supported in expressions", tok);
        }
        const Token& var = Next();
        AddTerm(terms, where, VarIndex(var.text), coef);
      } else if (tok.kind == TokKind::kName) {
        AddTerm(terms, where, VarIndex(tok.text), coef);
      } else {
        Fail("unexpected '" + tok.text + "'", tok);
      }
      first = false;
    }
    return terms;
  }

  static void AddTerm(std::vector<Term>& terms,
                      std::unordered_map<int, std::size_t>& where, int var,
                      double coef) {
    auto it = where.find(var);
    if (it != where.end()) {
      terms[it->second].coef += coef;
      return;
    }
    where.emplace(var, terms.size());
    terms.push_back({var, coef});
  }

  double SignedNumber() {
    double sign = 1.0;
    while (PeekOp("+") || PeekOp("-")) {
      if (Peek().text == "-") sign = -sign;
      ++pos_;
    }
    const Token& tok = Next();
    if (tok.kind != TokKind::kNumber) Fail("expected a number", tok);
    return sign * tok.value;
  }

  bool PeekSignedNumber() const {
    std::size_t k = 0;
    while (PeekOp("+", k) || PeekOp("-", k)) ++k;
    return HasAhead(k) && Peek(k).kind == TokKind::kNumber;
  }

  void ParseObjective() {
    Label();
    std::vector<Term> terms = Expression(/*stop_at_relation=*/false);
    for (const Term& t : terms) problem_.objective[t.var] = t.coef;
  }

  void ParseConstraints() {
    while (!AtEnd()) {
      const Token& start = Peek();
      std::optional<std::string> name = Label();
      std::vector<Term> terms = Expression(/*stop_at_relation=*/true);
      if (AtEnd()) FailAtEnd("constraint without relation");
      const Token& rel = Next();
      Relation relation = rel.text == "<=" ? Relation::kLessEqual
                          : rel.text == ">=" ? Relation::kGreaterEqual
                                             : Relation::kEqual;
      if (!PeekSignedNumber()) {
        if (AtEnd()) FailAtEnd("expected right-hand side");
        Fail("expected numeric right-hand side", Peek());
      }
      const double rhs = SignedNumber();
      if (!std::isfinite(rhs)) Fail("infinite right-hand side", start);
      problem_.AddConstraint(std::move(terms), relation, rhs,
                             name.value_or(std::string{}));
    }
  }

  void ParseBounds() {
    while (!AtEnd()) {
      if (PeekSignedNumber()) {
        // lo <= x [<= up]   or   up >= x [>= lo]
        const double value = SignedNumber();
        const Token& rel = Next();
        if (rel.kind != TokKind::kOp || rel.text == "+" || rel.text == "-" ||
            rel.text == ":") {
          Fail("expected relation in bound", rel);
        }
        const Token& var = Next();
        if (var.kind != TokKind::kName) Fail("expected variable name", var);
        const int j = VarIndex(var.text);
        ApplyBound(j, value, InvertRelation(rel.text), rel);
        if (PeekRelation()) {
          const Token& rel2 = Next();
          const double value2 = SignedNumber();
          ApplyBound(j, value2, rel2.text, rel2);
        }
        continue;
      }
      const Token& var = Next();
      if (var.kind != TokKind::kName) Fail("expected bound statement", var);
      const int j = VarIndex(var.text);
      if (!AtEnd() && Peek().kind == TokKind::kName &&
          Lower(Peek().text) == "free") {
        ++pos_;
        problem_.var_lower[j] = -kInf;
        problem_.var_upper[j] = kInf;
        continue;
      }
      if (!PeekRelation()) {
        if (AtEnd()) FailAtEnd("expected relation after variable");
        Fail("expected relation after variable", Peek());
      }
      const Token& rel = Next();
      ApplyBound(j, SignedNumber(), rel.text, rel);
    }
  }

  static std::string InvertRelation(const std::string& rel) {
    if (rel == "<=") return ">=";
    if (rel == ">=") return "<=";
    return rel;
  }

  // Applies "x <rel> value".
  void ApplyBound(int j, double value, const std::string& rel,
                  const Token& at) {
    if (rel == "<=") {
      if (value == -kInf) Fail("upper bound of -inf", at);
      problem_.var_upper[j] = value;
    } else if (rel == ">=") {
      if (value == kInf) Fail("lower bound of +inf", at);
      problem_.var_lower[j] = value;
    } else if (rel == "=") {
      if (std::isinf(value)) Fail("variable fixed at infinity", at);
      problem_.var_lower[j] = value;
      problem_.var_upper[j] = value;
    } else {
      Fail("expected relation in bound", at);
    }
  }

  void ParseIntegers(bool binary) {
    while (!AtEnd()) {
      const Token& tok = Next();
      if (tok.kind != TokKind::kName) Fail("expected variable name", tok);
      const int j = VarIndex(tok.text);
      problem_.is_integer[j] = true;
      if (binary) {
        problem_.var_lower[j] = 0.0;
        problem_.var_upper[j] = 1.0;
      }
    }
  }

  Problem problem_;
  std::unordered_map<std::string, int> index_;
  const std::vector<Token>* tokens_ = nullptr;
  std::size_t pos_ = 0;
  bool seen_objective_ = false;
  int last_line_ = 1;
};

}  // namespace

Problem ReadLpString(std::string_view text) { return LpReader().Read(text); }

Problem ReadLpFile(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return ReadLpString(buffer.str());
}

}  // namespace milpenv
