/*!
  \file netlist.hpp
  \brief Majority/NOT netlist DAG: evaluation, equivalence, sharing, metrics.
*/

#pragma once

#include "bits.hpp"
#include "cost.hpp"
#include "truth_table.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace revmaj
{

/*! \brief DAG of input / constant / NOT / 3-input-majority nodes.
 *
 * Node 0 does not exist; node references are indices into `nodes`.
 * NOT nodes usually sit directly above inputs (synthesizer convention), but
 * the structure and the evaluator accept NOT over any node, which the
 * synthesizer exploits to invert shared majority terms.
 */
class maj_netlist
{
public:
  enum class node_kind : uint8_t
  {
    input,
    constant,
    inverter,
    majority
  };

  struct node
  {
    node_kind kind;
    uint32_t a{ 0 }; //!< input index, constant value, or first child
    uint32_t b{ 0 };
    uint32_t c{ 0 };
  };

  maj_netlist() = default;
  explicit maj_netlist( std::vector<std::string> input_names );

  uint32_t num_inputs() const { return static_cast<uint32_t>( input_names_.size() ); }
  std::vector<std::string> const& input_names() const { return input_names_; }

  uint32_t add_input( std::string name );
  uint32_t get_input( uint32_t input_index ) const; //!< node id of input i
  uint32_t add_constant( bool value );
  uint32_t add_not( uint32_t child );
  uint32_t add_majority( uint32_t a, uint32_t b, uint32_t c );

  void add_output( std::string name, uint32_t node_id );

  std::vector<node> const& nodes() const { return nodes_; }
  std::vector<std::pair<std::string, uint32_t>> const& outputs() const { return outputs_; }

  /*! \brief Single-assignment evaluation; bit i of `assignment` drives input i. */
  std::vector<bool> evaluate( std::vector<bool> const& assignment ) const;

  /*! \brief Bit-parallel evaluation of every node over all 2^n rows. */
  std::vector<bitvec> evaluate_columns() const; //!< one column per output

  /*! \brief Column of an individual node over all 2^n rows. */
  bitvec node_column( uint32_t node_id ) const;

private:
  std::vector<std::string> input_names_;
  std::vector<uint32_t> input_nodes_;
  std::vector<node> nodes_;
  std::vector<std::pair<std::string, uint32_t>> outputs_;
};

/*! \brief Result of checking a netlist against a specification table. */
struct match_report
{
  bool matched{ false };
  uint32_t first_mismatch_row{ 0 };
  std::string mismatch_output;

  explicit operator bool() const { return matched; }
};

/*! \brief Exhaustive comparison over all 2^n rows; inputs/outputs matched by name. */
match_report equivalence_check( maj_netlist const& net, truth_table const& table );

/*! \brief Merges structurally identical sub-DAGs.
 *
 * Majority arguments are order-normalized before hashing, double inverters
 * collapse, and majority nodes with a complementary argument pair reduce to
 * the remaining argument.  Output functions are unchanged.
 */
maj_netlist share_subexpressions( maj_netlist const& net );

/*! \brief Complements every input literal and constant (netlist self-dual form). */
maj_netlist dualize( maj_netlist const& net );

/*! \brief The §2.5.2 metric suite plus the Landauer heat proxy. */
struct metrics_report
{
  cost_vector cost;
  uint32_t constant_inputs{ 0 };
  uint32_t control_inputs{ 0 };
  uint32_t garbage_outputs{ 0 };
  uint32_t clockzone_estimate{ 0 };
  double heat_proxy_joules{ 0.0 };
};

/*! \brief Computes the metric suite; apply share_subexpressions first.
 *
 * NOT gates count distinct complemented input literals once (shared
 * inverter) plus inverters over internal nodes.  Levels count majority
 * nestings only.  The clock-zone figure is the levels+1 heuristic and is
 * reported, never gated.
 */
metrics_report metrics( maj_netlist const& net, double temperature_kelvin = 300.15 );

/*! \brief Formats a report as aligned text plus machine-readable key=value lines. */
std::string format_metrics( metrics_report const& report );

/*! \brief kB * T * ln 2 in joules, the energy cost of erasing one bit. */
double landauer_energy( double temperature_kelvin );

/*! \brief Netlist text format.
 *
 * expr := ident | "0" | "1" | expr "'" | "Maj(" expr "," expr "," expr ")"
 * file := lines of `let <name> = <expr>` and `<output> = <expr>`
 */
maj_netlist parse_netlist( std::string const& text,
                           std::optional<std::vector<std::string>> const& expected_inputs = std::nullopt );

std::string emit_netlist( maj_netlist const& net );

/*! \brief Canonical single-line text of one output cone (for tie-breaking). */
std::string node_to_string( maj_netlist const& net, uint32_t node_id );

} // namespace revmaj
