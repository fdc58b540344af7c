/*!
  \file truth_table.hpp
  \brief Multi-output truth tables, column provenance, and bijectivity analysis.
*/

#pragma once

#include "bits.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace revmaj
{

/*! \brief Error raised by the .tt reader; the message names the offending line. */
class parse_error : public std::runtime_error
{
public:
  parse_error( uint32_t line, std::string const& what )
      : std::runtime_error( "line " + std::to_string( line ) + ": " + what ), line_( line )
  {
  }

  uint32_t line() const { return line_; }

private:
  uint32_t line_;
};

/*! \brief Where a column came from. */
struct column_origin
{
  enum class kind : uint8_t
  {
    input,
    complemented_input,
    constant,
    output,
    derived
  };

  kind tag{ kind::derived };
  uint32_t index{ 0 }; //!< input/output index, or constant value 0/1

  static column_origin input( uint32_t i ) { return { kind::input, i }; }
  static column_origin complemented_input( uint32_t i ) { return { kind::complemented_input, i }; }
  static column_origin constant( uint32_t v ) { return { kind::constant, v }; }
  static column_origin output( uint32_t j ) { return { kind::output, j }; }
  static column_origin derived() { return { kind::derived, 0 }; }
};

/*! \brief A 2^n-row bit column with provenance. */
struct column
{
  bitvec bits;
  column_origin origin{ column_origin::derived() };
};

/*! \brief Output column with don't-care rows plus the joint pairing target.
 *
 * `values` is arbitrary where `care` is 0 and must never be read there.
 * `target` keeps the full specification column so that the at-least-one-
 * must-match constraint on don't-care rows can be checked by the caller.
 */
struct incomplete_column
{
  bitvec care;
  bitvec values;
  bitvec target;
};

/*! \brief Multi-output Boolean function over n inputs as 2^n-row bit columns.
 *
 * Row index r encodes the input assignment with the first declared input as
 * the most significant bit, i.e. the usual a,b,c counting order.
 */
struct truth_table
{
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
  std::vector<bitvec> columns; //!< one per output, each of length 2^n

  uint32_t num_inputs() const { return static_cast<uint32_t>( input_names.size() ); }
  uint32_t num_outputs() const { return static_cast<uint32_t>( output_names.size() ); }
  uint32_t num_rows() const { return 1u << num_inputs(); }
};

/*! \brief Hard cap on the input count; everything here is exponential in n. */
inline constexpr uint32_t max_inputs = 16;

/*! \brief Column of input i under the row-index convention (input 0 is MSB). */
bitvec input_column( uint32_t num_inputs, uint32_t input_index );

/*! \brief Constant-0 / constant-1 columns. */
bitvec constant_column( uint32_t num_inputs, bool value );

/*! \brief Parses the .tt text format (see README for the grammar). */
truth_table parse_truth_table( std::string const& text );

/*! \brief Serializes a table back to .tt text; parse(emit(t)) == t bit-exactly. */
std::string emit_truth_table( truth_table const& table );

/*! \brief Number of rows on which the two columns hold the same bit. */
uint32_t similarity( bitvec const& target, bitvec const& candidate );

/*! \brief True iff row -> output-tuple is injective and |outputs| == |inputs|. */
bool is_bijective( truth_table const& table );

/*! \brief True iff no two rows map to the same output tuple. */
bool is_injective( truth_table const& table );

/*! \brief An output column that is an input column or its complement. */
struct pass_through_match
{
  uint32_t output_index;
  uint32_t input_index;
  bool complemented;
};

/*! \brief All output columns equal to some input column or its complement.
 *
 * Synthesis skips these: they cost zero gates and become plain wires.
 */
std::vector<pass_through_match> pass_through_outputs( truth_table const& table );

} // namespace revmaj
