#pragma once

// Text syntax: parser and printers for types, propositions, terms, proofs
// and extraction artifacts. The grammar is prefix s-expressions with a few
// program-notation extensions: pairs print as <a; b>, projections as postfix
// .1/.2, and elt abbreviates to e. Comments run from '#' to end of line.

#include "mrx/logic.hpp"

#include <map>
#include <string>

namespace mrx {

struct SyntaxError : Error {
  size_t line, col;
  SyntaxError(const std::string& msg, size_t line_, size_t col_)
      : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        col(col_) {}
};
struct UnboundNameError : Error { using Error::Error; };

struct PropTemplate {
  std::vector<std::string> params;  // leftmost parameter binds outermost
  PropPtr body;
};

struct ExtractDirective {
  std::string name;
  std::string proof;
};
struct NormaliseDirective {
  std::string name;
  TermPtr term;
  TypePtr type;
};

struct SourceFile {
  std::map<std::string, TypePtr> types;
  std::map<std::string, TermPtr> terms;
  std::map<std::string, PropTemplate> props;
  std::map<std::string, ProofPtr> proofs;
  std::vector<std::string> proof_order;
  std::vector<ExtractDirective> extracts;
  std::vector<NormaliseDirective> normalises;
};

SourceFile parse_file(const std::string& text);

// single-category entry points (used by tests and the artifact reader)
TypePtr parse_type(const std::string& text);
PropPtr parse_prop(const std::string& text);
TermPtr parse_term(const std::string& text);
ProofPtr parse_proof(const std::string& text);

std::string print_type(const TypePtr& t);
std::string print_prop(const PropPtr& p);
std::string print_term(const TermPtr& t);
std::string print_proof(const ProofPtr& p);
std::string print_sequent(const Sequent& s);
// result rendering: decimal numerals, value-level pairs and injections
std::string print_value(const Value& v);

// extraction artifacts (.rsx)
struct RsxFile {
  std::string name;
  Variant variant = Variant::MR;
  PropPtr prop;
  TermPtr realiser;
  TermPtr normalised;
  TermPtr program;  // null unless the goal had forall/exists shape
};
std::string write_rsx(const RsxFile& f);
RsxFile read_rsx(const std::string& text);

}  // namespace mrx
