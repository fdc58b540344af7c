/*!
  \file qca.hpp
  \brief Cell-level bistable QCA simulation: kink energies, four-phase
         Landauer/Bennett clocking, iterative relaxation, vector-mode
         simulation, and the standard primitive layouts.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace revmaj::qca
{

enum class cell_kind : uint8_t
{
  normal,
  fixed,
  input,
  output
};

enum class cell_rotation : uint8_t
{
  rot90,
  rot45
};

/*! \brief One 18 nm QCA cell.  Fixed cells keep their polarization. */
struct qca_cell
{
  double x{ 0.0 }; //!< nm
  double y{ 0.0 }; //!< nm
  int layer{ 0 };
  int zone{ 0 }; //!< 0..3
  cell_kind kind{ cell_kind::normal };
  cell_rotation rotation{ cell_rotation::rot90 };
  double polarization{ 0.0 };
  std::string label;
};

enum class clocking_scheme : uint8_t
{
  landauer,
  bennett
};

/*! \brief Bistable-engine settings; defaults follow the standard designer table. */
struct sim_params
{
  double cell_size{ 18.0 };             //!< nm
  uint32_t samples{ 12800 };
  double tolerance{ 0.001 };
  double radius_of_effect{ 65.0 };      //!< nm
  double relative_permittivity{ 12.9 };
  double clock_high{ 9.8e-22 };         //!< J
  double clock_low{ 3.8e-23 };          //!< J
  double clock_amplitude_factor{ 2.0 };
  double layer_separation{ 11.5 };      //!< nm
  uint32_t max_iterations_per_sample{ 100 };
  clocking_scheme clocking{ clocking_scheme::landauer };
};

/*! \brief E_k of a cell pair: Coulomb energy with opposite polarizations
 * minus the energy with equal polarizations, summed over all dot pairs.
 * Positive for in-line neighbours (alignment preferred), negative for
 * diagonal ones.
 */
double kink_energy( qca_cell const& ci, qca_cell const& cj, sim_params const& params );

/*! \brief Sparse pairwise kink energies; pairs beyond the effect radius are absent. */
struct kink_matrix
{
  std::vector<std::vector<std::pair<uint32_t, double>>> neighbors; //!< per cell: (index, E_k)
};

kink_matrix build_kink_matrix( std::vector<qca_cell> const& layout, sim_params const& params );

/*! \brief Tunneling energy of a zone at a sample.
 *
 * Landauer: a cosine with amplitude clock_amplitude_factor * (high - low)
 * around the midpoint, clipped to [clock_low, clock_high], zone z lagging
 * by z*pi/2.  Bennett: zones switch down in order, all hold together, then
 * release in reverse order.  `samples_per_cycle` defaults to the whole run.
 */
double clock_gamma( int zone, uint32_t sample, sim_params const& params,
                    uint32_t samples_per_cycle = 0 );

struct relax_result
{
  bool converged{ false };
  uint32_t iterations{ 0 };
};

/*! \brief Synchronous fixed-point iteration of the bistable update
 * P = x / sqrt(1 + x^2), x = sum_j E_k_ij P_j / (2 gamma), over all
 * non-fixed, non-input cells, until the largest update falls below the
 * tolerance or the iteration budget runs out.
 */
relax_result relax( std::vector<qca_cell>& layout, kink_matrix const& kinks,
                    std::vector<double> const& gamma_per_cell, sim_params const& params );

/*! \brief Convenience wrapper deriving per-cell gamma from the clock. */
relax_result relax_at_sample( std::vector<qca_cell>& layout, kink_matrix const& kinks,
                              sim_params const& params, uint32_t sample,
                              uint32_t samples_per_cycle = 0 );

/*! \brief Polarization history and per-window digitization of one run. */
struct sim_trace
{
  std::vector<std::string> labels;                //!< traced cells in layout order
  std::vector<std::vector<double>> history;       //!< [sample][traced cell]

  struct window_result
  {
    std::vector<bool> input_bits;                     //!< driven vector, input 0 first
    std::vector<std::pair<std::string, bool>> outputs;
    bool settled{ false };
  };
  std::vector<window_result> windows;
  uint32_t unsettled_samples{ 0 };
};

/*! \brief Drives all 2^k input combinations as square waves across the
 * sample budget and digitizes each output at the final hold-phase sample
 * of every window.
 */
sim_trace run_vector_simulation( std::vector<qca_cell> layout,
                                 std::vector<std::string> const& input_labels,
                                 sim_params const& params );

/*! \brief CSV export: sample rows plus digitized-summary comment lines. */
std::string trace_to_csv( sim_trace const& trace );

enum class primitive_kind : uint8_t
{
  wire90,
  wire45,
  inverter,
  majority,
  coplanar_crossover,
  multilayer_crossover
};

/*! \brief Standard geometries on a 20 nm pitch.  Wires take a length >= 2;
 * the majority gate drives from north, west, and south and reads east.
 */
std::vector<qca_cell> make_primitive( primitive_kind kind, uint32_t wire_length = 0,
                                      double origin_x = 0.0, double origin_y = 0.0,
                                      int zone = 0 );

/*! \brief Layout text format:
 * `cell <x_nm> <y_nm> <layer> <zone> <kind> [pol=<p>] [rot=45|90] [label=<name>]`
 */
std::vector<qca_cell> parse_layout( std::string const& text );
std::string emit_layout( std::vector<qca_cell> const& layout );

} // namespace revmaj::qca
