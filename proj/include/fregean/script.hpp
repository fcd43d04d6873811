#pragma once

// Data model for Flow Script documents: statements, axioms, entailments and
// biconditionals, plus the error type shared by the lexer, parser and
// desugaring pass.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fregean {

/// Name of an atomic statement. Case-sensitive; letter followed by
/// letters, digits or underscores.
struct StatementId {
  std::string name;

  StatementId() = default;
  explicit StatementId(std::string n) : name(std::move(n)) {}

  friend auto operator<=>(const StatementId&, const StatementId&) = default;
  friend bool operator==(const StatementId&, const StatementId&) = default;
};

inline bool is_valid_identifier(std::string_view s) {
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (s.empty() || !alpha(s.front())) return false;
  for (char c : s)
    if (!alpha(c) && !digit(c) && c != '_') return false;
  return true;
}

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// (premises) entail conclusion. `tag` is the ordinal position of the
/// entailment within its script.
struct Entailment {
  std::size_t tag = 0;
  std::vector<StatementId> premises;
  StatementId conclusion;
  SourcePos pos{};

  // Source position is diagnostic only.
  friend bool operator==(const Entailment& a, const Entailment& b) {
    return a.tag == b.tag && a.premises == b.premises && a.conclusion == b.conclusion;
  }
};

struct Biconditional {
  StatementId left;
  StatementId right;
  SourcePos pos{};

  friend bool operator==(const Biconditional& a, const Biconditional& b) {
    return a.left == b.left && a.right == b.right;
  }
};

struct Statement {
  StatementId id;
  std::optional<std::string> text;

  friend bool operator==(const Statement&, const Statement&) = default;
};

/// A parsed script. Statements appear in declaration (first-use) order.
struct ProofScript {
  std::vector<Statement> statements;
  std::vector<StatementId> axioms;
  std::vector<Entailment> entailments;
  std::vector<Biconditional> biconditionals;
  std::optional<StatementId> goal;

  friend bool operator==(const ProofScript&, const ProofScript&) = default;

  const Statement* find(const StatementId& id) const {
    for (const auto& s : statements)
      if (s.id == id) return &s;
    return nullptr;
  }
  bool declares(const StatementId& id) const { return find(id) != nullptr; }
  bool is_axiom(const StatementId& id) const {
    for (const auto& a : axioms)
      if (a == id) return true;
    return false;
  }
};

/// A script with biconditionals expanded into entailment pairs.
struct CoreScript {
  std::vector<Statement> statements;
  std::vector<StatementId> axioms;
  std::vector<Entailment> entailments;
  std::optional<StatementId> goal;

  friend bool operator==(const CoreScript&, const CoreScript&) = default;

  bool is_axiom(const StatementId& id) const {
    for (const auto& a : axioms)
      if (a == id) return true;
    return false;
  }
};

enum class ErrorKind {
  illegal_character,
  syntax,
  duplicate_entailment,
  self_entailment,
  duplicate_premise,
  conflicting_declaration,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::illegal_character: return "IllegalCharacter";
    case ErrorKind::syntax: return "SyntaxError";
    case ErrorKind::duplicate_entailment: return "DuplicateEntailment";
    case ErrorKind::self_entailment: return "SelfEntailment";
    case ErrorKind::duplicate_premise: return "SelfPremiseDuplicate";
    case ErrorKind::conflicting_declaration: return "ConflictingDeclaration";
  }
  return "?";
}

/// Any failure to turn source text into a valid script. Lines and columns
/// are 1-based; columns count bytes.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(ErrorKind kind, SourcePos pos, const std::string& detail)
      : std::runtime_error(format(kind, pos, detail)), kind_(kind), pos_(pos), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return pos_.line; }
  std::size_t column() const noexcept { return pos_.column; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(ErrorKind kind, SourcePos pos, const std::string& detail) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + to_string(kind) +
           ": " + detail;
  }

  ErrorKind kind_;
  SourcePos pos_;
  std::string detail_;
};

}  // namespace fregean

template <>
struct std::hash<fregean::StatementId> {
  std::size_t operator()(const fregean::StatementId& id) const noexcept {
    return std::hash<std::string>{}(id.name);
  }
};
