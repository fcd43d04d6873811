#pragma once

// Recursive-descent parser for Flow Script:
//
//   script := item*
//   item   := ( "stmt" IDENT ( ":" TEXT )?
//             | "axiom" IDENT
//             | "goal" IDENT
//             | IDENT ( "&" IDENT )* "=>" IDENT
//             | IDENT "<=>" IDENT ) ";"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fregean/lexer.hpp"
#include "fregean/script.hpp"

namespace fregean {

namespace detail {

inline bool same_premise_set(std::vector<StatementId> a, std::vector<StatementId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline const Entailment* find_duplicate(const std::vector<Entailment>& existing,
                                        const std::vector<StatementId>& premises,
                                        const StatementId& conclusion) {
  for (const auto& e : existing)
    if (e.conclusion == conclusion && same_premise_set(e.premises, premises)) return &e;
  return nullptr;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ProofScript run() {
    while (peek().kind != TokenKind::end) item();
    return std::move(script_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  const Token& take(TokenKind want, const char* context) {
    const Token& t = peek();
    if (t.kind != want) {
      throw ScriptError(ErrorKind::syntax, t.pos,
                        std::string("expected ") + to_string(want) + " " + context + ", found " +
                            to_string(t.kind));
    }
    ++pos_;
    return t;
  }

  void declare(const StatementId& id) {
    if (!script_.declares(id)) script_.statements.push_back({id, std::nullopt});
  }

  void item() {
    const Token& first = peek();
    switch (first.kind) {
      case TokenKind::kw_stmt: {
        ++pos_;
        const Token& name = take(TokenKind::ident, "after 'stmt'");
        std::optional<std::string> text;
        if (peek().kind == TokenKind::colon) {
          ++pos_;
          text = take(TokenKind::text, "after ':'").value;
        }
        take(TokenKind::semi, "to end statement declaration");
        StatementId id(name.value);
        declare(id);
        if (text) {
          auto& slot = std::find_if(script_.statements.begin(), script_.statements.end(),
                                    [&](const Statement& s) { return s.id == id; })
                           ->text;
          if (slot && *slot != *text)
            throw ScriptError(ErrorKind::conflicting_declaration, name.pos,
                              "statement '" + id.name + "' already has different text");
          slot = text;
        }
        return;
      }
      case TokenKind::kw_axiom: {
        ++pos_;
        const Token& name = take(TokenKind::ident, "after 'axiom'");
        take(TokenKind::semi, "to end axiom");
        StatementId id(name.value);
        declare(id);
        if (!script_.is_axiom(id)) script_.axioms.push_back(id);
        return;
      }
      case TokenKind::kw_goal: {
        ++pos_;
        const Token& name = take(TokenKind::ident, "after 'goal'");
        take(TokenKind::semi, "to end goal");
        StatementId id(name.value);
        declare(id);
        if (script_.goal && *script_.goal != id)
          throw ScriptError(ErrorKind::conflicting_declaration, name.pos,
                            "goal already set to '" + script_.goal->name + "'");
        script_.goal = id;
        return;
      }
      case TokenKind::ident:
        if (peek(1).kind == TokenKind::iff)
          biconditional();
        else
          entailment();
        return;
      default:
        throw ScriptError(ErrorKind::syntax, first.pos,
                          std::string("expected 'stmt', 'axiom', 'goal' or identifier, found ") +
                              to_string(first.kind));
    }
  }

  void biconditional() {
    const Token& l = take(TokenKind::ident, "on left of '<=>'");
    take(TokenKind::iff, "");
    const Token& r = take(TokenKind::ident, "on right of '<=>'");
    take(TokenKind::semi, "to end biconditional");
    StatementId left(l.value), right(r.value);
    if (left == right)
      throw ScriptError(ErrorKind::self_entailment, r.pos,
                        "'" + left.name + "' cannot be equivalent to itself");
    declare(left);
    declare(right);
    script_.biconditionals.push_back({left, right, l.pos});
  }

  void entailment() {
    SourcePos start = peek().pos;
    std::vector<StatementId> premises;
    std::vector<SourcePos> where;
    const Token& p0 = take(TokenKind::ident, "as premise");
    premises.emplace_back(p0.value);
    where.push_back(p0.pos);
    while (peek().kind == TokenKind::amp) {
      ++pos_;
      const Token& p = take(TokenKind::ident, "after '&'");
      premises.emplace_back(p.value);
      where.push_back(p.pos);
    }
    take(TokenKind::arrow, "after premises");
    const Token& c = take(TokenKind::ident, "as conclusion");
    take(TokenKind::semi, "to end entailment");
    StatementId conclusion(c.value);

    for (std::size_t i = 0; i < premises.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (premises[i] == premises[j])
          throw ScriptError(ErrorKind::duplicate_premise, where[i],
                            "premise '" + premises[i].name + "' listed twice");
    for (const auto& p : premises)
      if (p == conclusion)
        throw ScriptError(ErrorKind::self_entailment, c.pos,
                          "'" + conclusion.name + "' is among its own premises");
    if (find_duplicate(script_.entailments, premises, conclusion))
      throw ScriptError(ErrorKind::duplicate_entailment, start, "entailment already stated");

    for (const auto& p : premises) declare(p);
    declare(conclusion);
    script_.entailments.push_back(
        {script_.entailments.size(), std::move(premises), std::move(conclusion), start});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ProofScript script_;
};

inline std::string escape_text(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Parses Flow Script source. Identifiers are declared on first use and
/// repeated `axiom X;` lines are idempotent.
inline ProofScript parse_script(std::string_view source) {
  return detail::Parser(tokenize(source)).run();
}

/// Canonical Flow Script text for `script`; parsing it yields an equal script.
inline std::string print_script(const ProofScript& script) {
  std::ostringstream out;
  for (const auto& s : script.statements) {
    out << "stmt " << s.id.name;
    if (s.text) out << ": " << detail::escape_text(*s.text);
    out << ";\n";
  }
  for (const auto& a : script.axioms) out << "axiom " << a.name << ";\n";
  if (script.goal) out << "goal " << script.goal->name << ";\n";
  for (const auto& e : script.entailments) {
    for (std::size_t i = 0; i < e.premises.size(); ++i)
      out << (i ? " & " : "") << e.premises[i].name;
    out << " => " << e.conclusion.name << ";\n";
  }
  for (const auto& b : script.biconditionals)
    out << b.left.name << " <=> " << b.right.name << ";\n";
  return out.str();
}

/// Replaces every biconditional (L, R) by the entailments [L] => R and
/// [R] => L, appended after the existing entailments.
inline CoreScript desugar(const ProofScript& script) {
  CoreScript core{script.statements, script.axioms, script.entailments, script.goal};
  for (const auto& b : script.biconditionals) {
    for (const auto& [from, to] : {std::pair{b.left, b.right}, std::pair{b.right, b.left}}) {
      std::vector<StatementId> premises{from};
      if (detail::find_duplicate(core.entailments, premises, to))
        throw ScriptError(ErrorKind::duplicate_entailment, b.pos,
                          "biconditional repeats entailment " + from.name + " => " + to.name);
      core.entailments.push_back({core.entailments.size(), std::move(premises), to, b.pos});
    }
  }
  return core;
}

inline ProofScript to_proof_script(const CoreScript& core) {
  return ProofScript{core.statements, core.axioms, core.entailments, {}, core.goal};
}

inline std::string print_script(const CoreScript& core) { return print_script(to_proof_script(core)); }

/// First violated CoreScript invariant, if any.
inline std::optional<std::string> find_violation(const CoreScript& core) {
  auto declared = [&](const StatementId& id) {
    return std::any_of(core.statements.begin(), core.statements.end(),
                       [&](const Statement& s) { return s.id == id; });
  };
  for (std::size_t i = 0; i < core.statements.size(); ++i) {
    if (!is_valid_identifier(core.statements[i].id.name))
      return "invalid identifier '" + core.statements[i].id.name + "'";
    for (std::size_t j = 0; j < i; ++j)
      if (core.statements[i].id == core.statements[j].id)
        return "statement '" + core.statements[i].id.name + "' declared twice";
  }
  for (const auto& a : core.axioms)
    if (!declared(a)) return "axiom '" + a.name + "' is not a statement";
  if (core.goal && !declared(*core.goal)) return "goal is not a statement";
  for (std::size_t i = 0; i < core.entailments.size(); ++i) {
    const auto& e = core.entailments[i];
    if (e.tag != i) return "entailment tags are not ordinal";
    if (e.premises.empty()) return "entailment without premises";
    for (std::size_t p = 0; p < e.premises.size(); ++p) {
      if (!declared(e.premises[p])) return "undeclared premise '" + e.premises[p].name + "'";
      if (e.premises[p] == e.conclusion) return "self-entailment";
      for (std::size_t q = 0; q < p; ++q)
        if (e.premises[p] == e.premises[q]) return "repeated premise";
    }
    if (!declared(e.conclusion)) return "undeclared conclusion '" + e.conclusion.name + "'";
    for (std::size_t j = 0; j < i; ++j)
      if (core.entailments[j].conclusion == e.conclusion &&
          detail::same_premise_set(core.entailments[j].premises, e.premises))
        return "duplicate entailment";
  }
  return std::nullopt;
}

}  // namespace fregean
