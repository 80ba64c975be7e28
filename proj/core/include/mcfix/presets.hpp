#pragma once

#include "mcfix/document.hpp"
#include "mcfix/render.hpp"
#include "mcfix/simplicial.hpp"

namespace mcfix {

// Built-in example documents reproducing the worked examples end to end.
std::vector<std::string> preset_names();
ProblemDocument preset_document(const std::string& name);

// parametrized builders behind the presets
ProblemDocument wedge_document();
ProblemDocument map_s2_wedge_document();
ProblemDocument cp_document(int n, const Rat& a);
ProblemDocument sphere_document(int n);
ProblemDocument em_document(int generators, int degree);

struct CommandResult {
    int exit_code = 0;
    std::string output;
};

CommandResult cmd_check(const ProblemDocument& doc, long max_cells);
CommandResult cmd_invariants(const ProblemDocument& doc, int max_degree, Format fmt, long max_cells);
CommandResult cmd_pi(const ProblemDocument& doc, int max_degree, Format fmt, long max_cells);
CommandResult cmd_verify_retraction(const std::string& group, int dim_cap, const std::string& target,
                                    bool inject_fault, long max_cells);
CommandResult cmd_example(const std::string& name, long max_cells);

// regenerated output of one example, before the fixture comparison
std::string example_output(const std::string& name, long max_cells);
const std::string& fixture_text(const std::string& name);

// abelian target grammar for verify-retraction: "Q1", "Q1,Q2", "Q1:sign", "cone12"
struct RetractionTarget {
    SLAlgebra algebra;
    std::optional<GroupRep> action;
};
RetractionTarget parse_retraction_target(const std::string& spec, const FiniteGroup& g);

}  // namespace mcfix
