#pragma once

// JSON problem files. One schema with "type" in {"lp", "transport", "conic"}.

#include <iosfwd>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "entlp/builders.hpp"
#include "entlp/model.hpp"

namespace entlp {

struct ProblemFile {
  std::variant<StandardFormLP, TransportProblem, ConicProblem> problem;

  bool is_lp() const { return std::holds_alternative<StandardFormLP>(problem); }
  bool is_transport() const { return std::holds_alternative<TransportProblem>(problem); }
  bool is_conic() const { return std::holds_alternative<ConicProblem>(problem); }
  // The standard-form LP the problem builds to.
  StandardFormLP lp() const;
};

// Throws InvalidInput on malformed documents.
ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile read_problem(const std::string& path);

// Canonical "lp" document: sorted keys, integer A, round-trip doubles.
nlohmann::json lp_to_json(const StandardFormLP& lp);
std::string canonical_dump(const nlohmann::json& doc);

}  // namespace entlp
