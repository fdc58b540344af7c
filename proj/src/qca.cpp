#include "revmaj/qca.hpp"

#include "revmaj/truth_table.hpp" // parse_error

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace revmaj::qca
{

namespace
{

constexpr double elementary_charge = 1.602176634e-19; // C
constexpr double epsilon_0 = 8.8541878128e-12;        // F/m
constexpr double pi = 3.14159265358979323846;

struct dot
{
  double x, y, z; // nm
  double q;       // C
};

/* four dots per cell; the occupied diagonal carries -e/2 net, the other +e/2 */
std::array<dot, 4> cell_dots( qca_cell const& cell, double polarization, double cell_size,
                              double layer_separation )
{
  double const off = cell_size / 4.0;
  double const z = cell.layer * layer_separation;
  std::array<dot, 4> dots;
  if ( cell.rotation == cell_rotation::rot90 )
  {
    dots[0] = { cell.x + off, cell.y + off, z, 0 };
    dots[1] = { cell.x + off, cell.y - off, z, 0 };
    dots[2] = { cell.x - off, cell.y - off, z, 0 };
    dots[3] = { cell.x - off, cell.y + off, z, 0 };
  }
  else
  {
    double const d = off * std::sqrt( 2.0 );
    dots[0] = { cell.x, cell.y + d, z, 0 };
    dots[1] = { cell.x + d, cell.y, z, 0 };
    dots[2] = { cell.x, cell.y - d, z, 0 };
    dots[3] = { cell.x - d, cell.y, z, 0 };
  }
  /* polarization +1 occupies dots 0 and 2, -1 occupies 1 and 3 */
  double const occupied = -0.5 * elementary_charge;
  double const vacant = 0.5 * elementary_charge;
  bool const plus = polarization > 0.0;
  dots[0].q = plus ? occupied : vacant;
  dots[2].q = plus ? occupied : vacant;
  dots[1].q = plus ? vacant : occupied;
  dots[3].q = plus ? vacant : occupied;
  return dots;
}

double coulomb_sum( std::array<dot, 4> const& di, std::array<dot, 4> const& dj, double epsilon_r )
{
  double const k = 1.0 / ( 4.0 * pi * epsilon_0 * epsilon_r );
  double sum = 0.0;
  for ( auto const& n : di )
  {
    for ( auto const& m : dj )
    {
      double const dx = ( n.x - m.x ) * 1e-9;
      double const dy = ( n.y - m.y ) * 1e-9;
      double const dz = ( n.z - m.z ) * 1e-9;
      double const r = std::sqrt( dx * dx + dy * dy + dz * dz );
      if ( r < 1e-15 )
        throw std::invalid_argument( "kink_energy: coincident cells" );
      sum += k * n.q * m.q / r;
    }
  }
  return sum;
}

} // namespace

double kink_energy( qca_cell const& ci, qca_cell const& cj, sim_params const& params )
{
  if ( ci.x == cj.x && ci.y == cj.y && ci.layer == cj.layer )
    throw std::invalid_argument( "kink_energy: coincident cells" );
  auto const di = cell_dots( ci, +1.0, params.cell_size, params.layer_separation );
  auto const same = cell_dots( cj, +1.0, params.cell_size, params.layer_separation );
  auto const opposite = cell_dots( cj, -1.0, params.cell_size, params.layer_separation );
  return coulomb_sum( di, opposite, params.relative_permittivity ) -
         coulomb_sum( di, same, params.relative_permittivity );
}

kink_matrix build_kink_matrix( std::vector<qca_cell> const& layout, sim_params const& params )
{
  kink_matrix m;
  m.neighbors.resize( layout.size() );
  for ( uint32_t i = 0; i < layout.size(); ++i )
  {
    for ( uint32_t j = i + 1; j < layout.size(); ++j )
    {
      double const dx = layout[i].x - layout[j].x;
      double const dy = layout[i].y - layout[j].y;
      double const dz = ( layout[i].layer - layout[j].layer ) * params.layer_separation;
      double const dist = std::sqrt( dx * dx + dy * dy + dz * dz );
      if ( dist > params.radius_of_effect )
        continue;
      double const ek = kink_energy( layout[i], layout[j], params );
      m.neighbors[i].emplace_back( j, ek );
      m.neighbors[j].emplace_back( i, ek );
    }
  }
  return m;
}

double clock_gamma( int zone, uint32_t sample, sim_params const& params, uint32_t samples_per_cycle )
{
  if ( zone < 0 || zone > 3 )
    throw std::invalid_argument( "clock_gamma: zone out of range" );
  uint32_t const cycle = samples_per_cycle == 0 ? params.samples : samples_per_cycle;
  double const t = static_cast<double>( sample % cycle ) / static_cast<double>( cycle );

  if ( params.clocking == clocking_scheme::bennett )
  {
    /* zones enter hold in order 0..3 and release in reverse order */
    double const u = 1.0 / 8.0;
    double const down_start = zone * u;
    double const up_start = ( 7 - zone ) * u;
    if ( t < down_start )
      return params.clock_high;
    if ( t < down_start + u )
    {
      double const f = ( t - down_start ) / u;
      return params.clock_high + f * ( params.clock_low - params.clock_high );
    }
    if ( t < up_start )
      return params.clock_low;
    if ( t < up_start + u )
    {
      double const f = ( t - up_start ) / u;
      return params.clock_low + f * ( params.clock_high - params.clock_low );
    }
    return params.clock_high;
  }

  double const mid = 0.5 * ( params.clock_high + params.clock_low );
  double const amplitude = params.clock_amplitude_factor * ( params.clock_high - params.clock_low );
  double const theta = 2.0 * pi * t - 0.5 * pi * zone;
  double const raw = mid + amplitude * std::cos( theta );
  return std::clamp( raw, params.clock_low, params.clock_high );
}

relax_result relax( std::vector<qca_cell>& layout, kink_matrix const& kinks,
                    std::vector<double> const& gamma_per_cell, sim_params const& params )
{
  if ( gamma_per_cell.size() != layout.size() )
    throw std::invalid_argument( "relax: gamma vector size mismatch" );
  relax_result res;
  std::vector<double> next( layout.size() );
  for ( uint32_t iter = 0; iter < params.max_iterations_per_sample; ++iter )
  {
    double max_delta = 0.0;
    for ( uint32_t i = 0; i < layout.size(); ++i )
    {
      auto const& cell = layout[i];
      if ( cell.kind == cell_kind::fixed || cell.kind == cell_kind::input )
      {
        next[i] = cell.polarization;
        continue;
      }
      double acc = 0.0;
      for ( auto const& [j, ek] : kinks.neighbors[i] )
        acc += ek * layout[j].polarization;
      double const x = acc / ( 2.0 * gamma_per_cell[i] );
      next[i] = x / std::sqrt( 1.0 + x * x );
      max_delta = std::max( max_delta, std::abs( next[i] - cell.polarization ) );
    }
    for ( uint32_t i = 0; i < layout.size(); ++i )
      layout[i].polarization = next[i];
    ++res.iterations;
    if ( max_delta < params.tolerance )
    {
      res.converged = true;
      return res;
    }
  }
  return res;
}

relax_result relax_at_sample( std::vector<qca_cell>& layout, kink_matrix const& kinks,
                              sim_params const& params, uint32_t sample,
                              uint32_t samples_per_cycle )
{
  std::vector<double> gammas( layout.size() );
  for ( uint32_t i = 0; i < layout.size(); ++i )
    gammas[i] = clock_gamma( layout[i].zone, sample, params, samples_per_cycle );
  return relax( layout, kinks, gammas, params );
}

sim_trace run_vector_simulation( std::vector<qca_cell> layout,
                                 std::vector<std::string> const& input_labels,
                                 sim_params const& params )
{
  /* resolve input cells in the requested order */
  std::vector<uint32_t> inputs;
  for ( auto const& want : input_labels )
  {
    bool found = false;
    for ( uint32_t i = 0; i < layout.size(); ++i )
    {
      if ( layout[i].kind == cell_kind::input && layout[i].label == want )
      {
        inputs.push_back( i );
        found = true;
        break;
      }
    }
    if ( !found )
      throw std::invalid_argument( "run_vector_simulation: no input cell labelled '" + want + "'" );
  }
  if ( inputs.empty() )
    throw std::invalid_argument( "run_vector_simulation: no input cells selected" );

  std::vector<uint32_t> outputs;
  for ( uint32_t i = 0; i < layout.size(); ++i )
  {
    if ( layout[i].kind == cell_kind::output )
      outputs.push_back( i );
  }
  if ( outputs.empty() )
    throw std::invalid_argument( "run_vector_simulation: layout has no output cells" );

  {
    std::set<std::string> seen;
    for ( auto const& cell : layout )
    {
      if ( !cell.label.empty() && !seen.insert( cell.label ).second )
        throw std::invalid_argument( "run_vector_simulation: duplicate label '" + cell.label + "'" );
    }
  }

  uint32_t const k = static_cast<uint32_t>( inputs.size() );
  uint32_t const windows = 1u << k;
  uint32_t const spw = std::max( 1u, params.samples / windows );
  /* two clock cycles per input window, the designer convention */
  uint32_t const cycle = std::max( 1u, spw / 2 );

  sim_trace trace;
  std::vector<uint32_t> traced;
  for ( uint32_t i = 0; i < layout.size(); ++i )
  {
    if ( !layout[i].label.empty() )
    {
      traced.push_back( i );
      trace.labels.push_back( layout[i].label );
    }
  }

  auto const kinks = build_kink_matrix( layout, params );

  std::vector<relax_result> per_sample( params.samples );
  trace.history.reserve( params.samples );
  for ( uint32_t s = 0; s < params.samples; ++s )
  {
    uint32_t const w = std::min( windows - 1, s / spw );
    for ( uint32_t m = 0; m < k; ++m )
    {
      bool const bit = ( w >> ( k - 1 - m ) ) & 1u;
      layout[inputs[m]].polarization = bit ? 1.0 : -1.0;
    }
    per_sample[s] = relax_at_sample( layout, kinks, params, s, cycle );
    if ( !per_sample[s].converged )
      ++trace.unsettled_samples;
    std::vector<double> row;
    row.reserve( traced.size() );
    for ( uint32_t idx : traced )
      row.push_back( layout[idx].polarization );
    trace.history.push_back( std::move( row ) );
  }

  /* digitize at the last hold-phase sample of every window */
  std::vector<uint32_t> traced_pos( layout.size(), 0 );
  for ( uint32_t t = 0; t < traced.size(); ++t )
    traced_pos[traced[t]] = t;

  for ( uint32_t w = 0; w < windows; ++w )
  {
    sim_trace::window_result wr;
    for ( uint32_t m = 0; m < k; ++m )
      wr.input_bits.push_back( ( w >> ( k - 1 - m ) ) & 1u );
    wr.settled = true;
    uint32_t const begin = w * spw;
    uint32_t const end = ( w + 1 == windows ) ? params.samples : ( w + 1 ) * spw;
    for ( uint32_t out : outputs )
    {
      int last_hold = -1;
      for ( uint32_t s = begin; s < end; ++s )
      {
        double const g = clock_gamma( layout[out].zone, s, params, cycle );
        if ( g <= params.clock_low * ( 1.0 + 1e-9 ) )
          last_hold = static_cast<int>( s );
      }
      bool settled = last_hold >= 0 && per_sample[last_hold].converged;
      double const p = last_hold < 0 ? 0.0 : trace.history[last_hold][traced_pos[out]];
      if ( p == 0.0 )
        settled = false;
      wr.outputs.emplace_back( layout[out].label, p > 0.0 );
      wr.settled = wr.settled && settled;
    }
    trace.windows.push_back( std::move( wr ) );
  }
  return trace;
}

std::string trace_to_csv( sim_trace const& trace )
{
  std::ostringstream out;
  out << "sample";
  for ( auto const& l : trace.labels )
    out << ',' << l;
  out << '\n';
  char buf[48];
  for ( uint32_t s = 0; s < trace.history.size(); ++s )
  {
    out << s;
    for ( double p : trace.history[s] )
    {
      std::snprintf( buf, sizeof buf, "%.6g", p );
      out << ',' << buf;
    }
    out << '\n';
  }
  for ( auto const& w : trace.windows )
  {
    out << "# vector ";
    for ( bool b : w.input_bits )
      out << ( b ? '1' : '0' );
    out << " ->";
    for ( auto const& [label, bit] : w.outputs )
      out << ' ' << label << '=' << ( bit ? '1' : '0' );
    out << " settled=" << ( w.settled ? "true" : "false" ) << '\n';
  }
  return out.str();
}

std::vector<qca_cell> make_primitive( primitive_kind kind, uint32_t wire_length, double ox,
                                      double oy, int zone )
{
  double const pitch = 20.0;
  std::vector<qca_cell> cells;
  auto add = [&]( double x, double y, int layer, cell_kind k, cell_rotation rot,
                  std::string label, double pol = 0.0 ) {
    qca_cell c;
    c.x = ox + x;
    c.y = oy + y;
    c.layer = layer;
    c.zone = zone;
    c.kind = k;
    c.rotation = rot;
    c.polarization = pol;
    c.label = std::move( label );
    cells.push_back( c );
  };

  switch ( kind )
  {
  case primitive_kind::wire90:
  case primitive_kind::wire45:
  {
    if ( wire_length < 2 )
      throw std::invalid_argument( "make_primitive: wire length must be at least 2" );
    auto const rot = kind == primitive_kind::wire90 ? cell_rotation::rot90 : cell_rotation::rot45;
    for ( uint32_t i = 0; i < wire_length; ++i )
    {
      cell_kind k = cell_kind::normal;
      std::string label;
      if ( i == 0 )
      {
        k = cell_kind::input;
        label = "in";
      }
      else if ( i + 1 == wire_length )
      {
        k = cell_kind::output;
        label = "out";
      }
      else
      {
        label = "w" + std::to_string( i );
      }
      add( i * pitch, 0, 0, k, rot, label );
    }
    break;
  }
  case primitive_kind::inverter:
  {
    /* input wire forks into two branches that rejoin diagonally */
    add( 0, 0, 0, cell_kind::input, cell_rotation::rot90, "in" );
    add( pitch, 0, 0, cell_kind::normal, cell_rotation::rot90, "" );
    for ( double sign : { 1.0, -1.0 } )
    {
      add( pitch, sign * pitch, 0, cell_kind::normal, cell_rotation::rot90, "" );
      add( 2 * pitch, sign * pitch, 0, cell_kind::normal, cell_rotation::rot90, "" );
      add( 3 * pitch, sign * pitch, 0, cell_kind::normal, cell_rotation::rot90, "" );
    }
    add( 4 * pitch, 0, 0, cell_kind::output, cell_rotation::rot90, "out" );
    break;
  }
  case primitive_kind::majority:
  {
    add( pitch, pitch, 0, cell_kind::input, cell_rotation::rot90, "a" );   // north
    add( 0, 0, 0, cell_kind::input, cell_rotation::rot90, "b" );           // west
    add( pitch, -pitch, 0, cell_kind::input, cell_rotation::rot90, "c" );  // south
    add( pitch, 0, 0, cell_kind::normal, cell_rotation::rot90, "center" );
    add( 2 * pitch, 0, 0, cell_kind::output, cell_rotation::rot90, "out" ); // east
    break;
  }
  case primitive_kind::coplanar_crossover:
  {
    /* horizontal 90-degree wire jumps the rotated vertical chain */
    add( 0, 0, 0, cell_kind::input, cell_rotation::rot90, "h_in" );
    add( pitch, 0, 0, cell_kind::normal, cell_rotation::rot90, "" );
    add( 3 * pitch, 0, 0, cell_kind::normal, cell_rotation::rot90, "" );
    add( 4 * pitch, 0, 0, cell_kind::output, cell_rotation::rot90, "h_out" );
    add( 2 * pitch, -2 * pitch, 0, cell_kind::input, cell_rotation::rot45, "v_in" );
    add( 2 * pitch, -pitch, 0, cell_kind::normal, cell_rotation::rot45, "" );
    add( 2 * pitch, 0, 0, cell_kind::normal, cell_rotation::rot45, "" );
    add( 2 * pitch, pitch, 0, cell_kind::normal, cell_rotation::rot45, "" );
    add( 2 * pitch, 2 * pitch, 0, cell_kind::output, cell_rotation::rot45, "v_out" );
    break;
  }
  case primitive_kind::multilayer_crossover:
  {
    add( 0, 0, 0, cell_kind::input, cell_rotation::rot90, "h_in" );
    add( pitch, 0, 0, cell_kind::normal, cell_rotation::rot90, "" );
    add( 2 * pitch, 0, 0, cell_kind::normal, cell_rotation::rot90, "" );
    add( 3 * pitch, 0, 0, cell_kind::normal, cell_rotation::rot90, "" );
    add( 4 * pitch, 0, 0, cell_kind::output, cell_rotation::rot90, "h_out" );
    add( 2 * pitch, -2 * pitch, 0, cell_kind::input, cell_rotation::rot90, "v_in" );
    add( 2 * pitch, -pitch, 0, cell_kind::normal, cell_rotation::rot90, "" );
    add( 2 * pitch, -pitch, 1, cell_kind::normal, cell_rotation::rot90, "" );
    add( 2 * pitch, 0, 1, cell_kind::normal, cell_rotation::rot90, "" );
    add( 2 * pitch, pitch, 1, cell_kind::normal, cell_rotation::rot90, "" );
    add( 2 * pitch, pitch, 0, cell_kind::normal, cell_rotation::rot90, "" );
    add( 2 * pitch, 2 * pitch, 0, cell_kind::output, cell_rotation::rot90, "v_out" );
    break;
  }
  }
  return cells;
}

std::vector<qca_cell> parse_layout( std::string const& text )
{
  std::vector<qca_cell> cells;
  std::istringstream in( text );
  std::string raw;
  uint32_t line = 0;
  while ( std::getline( in, raw ) )
  {
    ++line;
    if ( auto const pos = raw.find( '#' ); pos != std::string::npos )
      raw.erase( pos );
    std::istringstream ls( raw );
    std::string word;
    if ( !( ls >> word ) )
      continue;
    if ( word != "cell" )
      throw parse_error( line, "expected 'cell', found '" + word + "'" );
    qca_cell c;
    std::string kind;
    if ( !( ls >> c.x >> c.y >> c.layer >> c.zone >> kind ) )
      throw parse_error( line, "cell needs <x> <y> <layer> <zone> <kind>" );
    if ( kind == "normal" )
      c.kind = cell_kind::normal;
    else if ( kind == "fixed" )
      c.kind = cell_kind::fixed;
    else if ( kind == "input" )
      c.kind = cell_kind::input;
    else if ( kind == "output" )
      c.kind = cell_kind::output;
    else
      throw parse_error( line, "unknown cell kind '" + kind + "'" );
    if ( c.zone < 0 || c.zone > 3 )
      throw parse_error( line, "zone must be 0..3" );
    while ( ls >> word )
    {
      if ( word.rfind( "pol=", 0 ) == 0 )
        c.polarization = std::stod( word.substr( 4 ) );
      else if ( word == "rot=45" )
        c.rotation = cell_rotation::rot45;
      else if ( word == "rot=90" )
        c.rotation = cell_rotation::rot90;
      else if ( word.rfind( "label=", 0 ) == 0 )
        c.label = word.substr( 6 );
      else
        throw parse_error( line, "unknown attribute '" + word + "'" );
    }
    if ( c.kind == cell_kind::fixed && c.polarization != 1.0 && c.polarization != -1.0 )
      throw parse_error( line, "fixed cells need pol=1 or pol=-1" );
    cells.push_back( c );
  }
  if ( cells.empty() )
    throw parse_error( 1, "layout has no cells" );
  return cells;
}

std::string emit_layout( std::vector<qca_cell> const& layout )
{
  std::ostringstream out;
  char buf[64];
  for ( auto const& c : layout )
  {
    char const* kind = c.kind == cell_kind::normal   ? "normal"
                       : c.kind == cell_kind::fixed  ? "fixed"
                       : c.kind == cell_kind::input  ? "input"
                                                     : "output";
    std::snprintf( buf, sizeof buf, "cell %g %g %d %d %s", c.x, c.y, c.layer, c.zone, kind );
    out << buf;
    if ( c.kind == cell_kind::fixed || c.polarization != 0.0 )
    {
      std::snprintf( buf, sizeof buf, " pol=%g", c.polarization );
      out << buf;
    }
    if ( c.rotation == cell_rotation::rot45 )
      out << " rot=45";
    if ( !c.label.empty() )
      out << " label=" << c.label;
    out << '\n';
  }
  return out.str();
}

} // namespace revmaj::qca
