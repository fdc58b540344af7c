/*!
  \file reversible.hpp
  \brief Irreversible-to-reversible conversion and the built-in gate fixtures.
*/

#pragma once

#include "cost.hpp"
#include "truth_table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace revmaj
{

/*! \brief Outcome of appending input-copy garbage columns until bijective. */
struct reversible_result
{
  truth_table table;                                      //!< extended with garbage columns
  std::vector<std::pair<std::string, uint32_t>> garbage;  //!< (output name, source input index)
  uint32_t ancilla_count{ 0 };                            //!< constant inputs added; always 0 here
  std::vector<uint32_t> ones_count;                       //!< popcount of each original output
};

/*! \brief Appends the input column that maximally reduces colliding output
 * tuples, lowest input index on ties, until the map is injective and at
 * least square.  Appended columns are exact input copies, so garbage
 * outputs never cost gates.
 */
reversible_result reversibilize( truth_table const& table );

/*! \brief The proposition's garbage bound for a single-output function. */
struct garbage_bound_result
{
  uint32_t theoretical_min;
  uint32_t gate_free;
};

/*! \brief n garbage columns when the output's ones-count differs from
 * 2^(n-1); otherwise n-1 in theory but n without extra gates.
 */
garbage_bound_result garbage_bound( uint32_t num_inputs, uint32_t ones );

enum class functional_status
{
  verified,
  suspected_typo
};

/*! \brief A published gate or benchmark function with its printed circuit.
 *
 * `status` is decided by exhaustively evaluating the published netlist
 * against the defining truth table; printed expressions that fail are kept
 * but quarantined as suspected typos.
 */
struct gate_fixture
{
  std::string name;
  truth_table spec;
  std::string published_netlist;                  //!< empty when none printed
  std::optional<cost_vector> published_cost;      //!< full proposed-method row
  std::optional<uint32_t> published_majority;     //!< 13-function benchmark column
  std::optional<uint32_t> published_not;
  std::optional<uint32_t> published_clockzones;
  functional_status status{ functional_status::verified };
};

/*! \brief Fredkin, Toffoli, Peres, RUG, the reversible full adder, and the
 * 13 standard three-variable benchmark functions with their printed
 * circuits and published cost rows.
 */
std::vector<gate_fixture> builtin_fixtures();

/*! \brief Looks up a fixture by name (case-sensitive). */
std::optional<gate_fixture> find_fixture( std::string const& name );

/*! \brief Why physical cell-count and area comparisons are not reproduced. */
std::string layout_comparison_note();

} // namespace revmaj
