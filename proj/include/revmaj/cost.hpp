/*!
  \file cost.hpp
  \brief Lexicographic circuit cost: majority gates, levels, NOT gates, control inputs.
*/

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace revmaj
{

/*! \brief Multi-objective cost, ordered lexicographically in field order.
 *
 * `control_inputs` counts constant arguments fed to majority nodes; each one
 * programs the gate into an AND or an OR and dissipates avoidable heat.
 */
struct cost_vector
{
  uint32_t majority_count{ 0 };
  uint32_t levels{ 0 };
  uint32_t not_count{ 0 };
  uint32_t control_inputs{ 0 };

  auto operator<=>( cost_vector const& ) const = default;

  std::string to_string() const
  {
    return std::to_string( majority_count ) + "/" + std::to_string( levels ) + "/" +
           std::to_string( not_count ) + "/" + std::to_string( control_inputs );
  }
};

} // namespace revmaj
