/*!
  \file synth.hpp
  \brief Multi-objective majority-logic synthesis: base-column selection,
         don't-care constraint derivation, joint pair completion, and
         lexicographic cost optimization.
*/

#pragma once

#include "bits.hpp"
#include "cost.hpp"
#include "netlist.hpp"
#include "truth_table.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace revmaj
{

struct synth_config
{
  uint32_t max_depth{ 4 };        //!< maximum majority nesting explored
  bool explore_ties{ true };      //!< branch on every base column tied at maximum similarity
  bool allow_constant_base{ false };
};

class synthesis_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief A ranked base-column candidate (input literal or its complement). */
struct base_candidate
{
  uint32_t input_index;
  bool complemented;
  bool constant_base{ false }; //!< only with synth_config::allow_constant_base
  bool constant_value{ false };
  uint32_t score; //!< rows of agreement with the target
};

/*! \brief Base candidates ranked by descending similarity.
 *
 * With explore_ties all candidates tied at maximum similarity are returned
 * and the search branches on each; otherwise only the first is returned.
 * Tied candidates are ordered uncomplemented first, then by descending
 * input index, which reproduces the worked examples' choice of base.
 */
std::vector<base_candidate> select_base_columns( bitvec const& target,
                                                 std::vector<bitvec> const& inputs,
                                                 synth_config const& cfg = {} );

/*! \brief The F1/F2/F3 split of one decomposition step.
 *
 * Maj(F1,F2,F3) = Q demands at least two of three agree with Q per row, so
 * rows with F1 != Q force F2 = F3 = Q, and rows with F1 = Q carry the joint
 * at-least-one-must-match constraint instead.
 */
struct decomposition
{
  column f1;
  incomplete_column f2_constraint;
  incomplete_column f3_constraint;
  bitvec joint_rows;
};

decomposition derive_constraints( bitvec const& target, column const& f1 );

/*! \brief One entry of the single-majority term space. */
struct candidate_term
{
  std::string text;
  bitvec column;
};

/*! \brief All semantically distinct terms Maj(u,v,w) over literals and
 * constants, deduplicated by column bits, plus the bare literals and
 * constants themselves.  Terms whose column collapses to a literal or a
 * constant are emitted as that leaf.
 */
std::vector<candidate_term> candidate_terms( std::vector<std::string> const& input_names );

struct pair_completion
{
  maj_netlist f2;
  maj_netlist f3;
  cost_vector cost; //!< combined cost of the pair, shared subterms counted once
};

/*! \brief Cheapest (F2, F3) pair satisfying the care rows and the joint
 * constraint, or failure when the depth budget is exhausted.
 * `depth` is the nesting already consumed by enclosing decompositions.
 */
std::optional<pair_completion> complete_pair( decomposition const& dec,
                                              std::vector<std::string> const& input_names,
                                              synth_config const& cfg = {},
                                              uint32_t depth = 0 );

struct synth_result
{
  maj_netlist netlist;
  cost_vector cost;
};

/*! \brief Synthesizes one output column over the named inputs. */
synth_result synthesize_column( bitvec const& target,
                                std::vector<std::string> const& input_names,
                                synth_config const& cfg = {},
                                std::string const& output_name = "f" );

/*! \brief Synthesizes a whole table: pass-through outputs become wires, the
 * rest are synthesized with fan-out sharing across outputs, and the result
 * is verified exhaustively against the table before it is returned.
 */
synth_result synthesize_function( truth_table const& table, synth_config const& cfg = {} );

} // namespace revmaj
