#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <revmaj/qca.hpp>
#include <revmaj/truth_table.hpp> // parse_error

#include <cmath>
#include <random>

using namespace revmaj::qca;

namespace
{

/* fast settings for unit tests; acceptance uses the full defaults */
sim_params quick_params()
{
  sim_params p;
  p.samples = 1600;
  return p;
}

qca_cell cell_at( double x, double y, int layer = 0, cell_rotation rot = cell_rotation::rot90 )
{
  qca_cell c;
  c.x = x;
  c.y = y;
  c.layer = layer;
  c.rotation = rot;
  return c;
}

/* independent 16-term Coulomb oracle, written against the charge model:
   -e/2 on the occupied diagonal, +e/2 on the other two dots */
double oracle_kink( qca_cell const& ci, qca_cell const& cj, sim_params const& p )
{
  double const e = 1.602176634e-19;
  double const eps0 = 8.8541878128e-12;
  double const pi = std::acos( -1.0 );
  auto dots = [&]( qca_cell const& c, double pol ) {
    double const off = p.cell_size / 4.0;
    std::vector<std::array<double, 4>> d;
    double const z = c.layer * p.layer_separation;
    if ( c.rotation == cell_rotation::rot90 )
    {
      d = { { c.x + off, c.y + off, z, 0 },
            { c.x + off, c.y - off, z, 0 },
            { c.x - off, c.y - off, z, 0 },
            { c.x - off, c.y + off, z, 0 } };
    }
    else
    {
      double const r = off * std::sqrt( 2.0 );
      d = { { c.x, c.y + r, z, 0 },
            { c.x + r, c.y, z, 0 },
            { c.x, c.y - r, z, 0 },
            { c.x - r, c.y, z, 0 } };
    }
    for ( int k = 0; k < 4; ++k )
    {
      bool const occupied = ( k % 2 == 0 ) == ( pol > 0 );
      d[k][3] = occupied ? -e / 2 : e / 2;
    }
    return d;
  };
  auto energy = [&]( double pj ) {
    double sum = 0;
    for ( auto const& n : dots( ci, 1.0 ) )
    {
      for ( auto const& m : dots( cj, pj ) )
      {
        double const dx = ( n[0] - m[0] ) * 1e-9;
        double const dy = ( n[1] - m[1] ) * 1e-9;
        double const dz = ( n[2] - m[2] ) * 1e-9;
        sum += n[3] * m[3] /
               ( 4 * pi * eps0 * p.relative_permittivity * std::sqrt( dx * dx + dy * dy + dz * dz ) );
      }
    }
    return sum;
  };
  return energy( -1.0 ) - energy( 1.0 );
}

} // namespace

TEST_CASE( "kink energy matches the independent Coulomb sum" )
{
  sim_params const p;
  auto const a = cell_at( 0, 0 );

  auto const inline90 = cell_at( 20, 0 );
  double const e_inline = kink_energy( a, inline90, p );
  CHECK( e_inline == doctest::Approx( oracle_kink( a, inline90, p ) ).epsilon( 1e-12 ) );
  CHECK( e_inline > 0.0 ); // in-line cells prefer alignment

  auto const diagonal = cell_at( 20, 20 );
  double const e_diag = kink_energy( a, diagonal, p );
  CHECK( e_diag == doctest::Approx( oracle_kink( a, diagonal, p ) ).epsilon( 1e-12 ) );
  CHECK( e_diag < 0.0 ); // diagonal cells prefer opposite polarizations

  auto const rot_pair = cell_at( 20, 0, 0, cell_rotation::rot45 );
  auto const a45 = cell_at( 0, 0, 0, cell_rotation::rot45 );
  double const e_45 = kink_energy( a45, rot_pair, p );
  CHECK( e_45 == doctest::Approx( oracle_kink( a45, rot_pair, p ) ).epsilon( 1e-12 ) );
  CHECK( e_45 < 0.0 ); // rotated wires alternate

  /* axial 90/45 pairs decouple by symmetry */
  CHECK( std::abs( kink_energy( a, rot_pair, p ) ) < 1e-30 );

  /* stacked cells couple across layers and prefer opposite polarizations */
  auto const above = cell_at( 0, 0, 1 );
  CHECK( kink_energy( a, above, p ) < 0.0 );
}

TEST_CASE( "kink energy is symmetric" )
{
  sim_params const p;
  std::mt19937 rng( 3 );
  std::uniform_real_distribution<double> pos( -60, 60 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    auto const a = cell_at( pos( rng ), pos( rng ), trial % 2,
                            trial % 3 ? cell_rotation::rot90 : cell_rotation::rot45 );
    auto const b = cell_at( pos( rng ), pos( rng ) );
    if ( a.x == b.x && a.y == b.y && a.layer == b.layer )
      continue;
    CHECK( kink_energy( a, b, p ) == doctest::Approx( kink_energy( b, a, p ) ).epsilon( 1e-12 ) );
  }
}

TEST_CASE( "scaling the whole geometry by two halves the kink energy" )
{
  sim_params p;
  auto const a = cell_at( 0, 0 );
  auto const b = cell_at( 20, 20 );
  double const base = kink_energy( a, b, p );

  sim_params doubled = p;
  doubled.cell_size *= 2;
  doubled.layer_separation *= 2;
  auto const b2 = cell_at( 40, 40 );
  CHECK( kink_energy( a, b2, doubled ) == doctest::Approx( base / 2 ).epsilon( 1e-12 ) );
}

TEST_CASE( "coincident cells are rejected" )
{
  sim_params const p;
  CHECK_THROWS_AS( kink_energy( cell_at( 0, 0 ), cell_at( 0, 0 ), p ), std::invalid_argument );
}

TEST_CASE( "pairs beyond the effect radius contribute exactly zero" )
{
  sim_params const p;
  std::vector<qca_cell> far = { cell_at( 0, 0 ), cell_at( 70, 0 ) };
  auto const m = build_kink_matrix( far, p );
  CHECK( m.neighbors[0].empty() );
  CHECK( m.neighbors[1].empty() );

  std::vector<qca_cell> near = { cell_at( 0, 0 ), cell_at( 60, 0 ) };
  CHECK( build_kink_matrix( near, p ).neighbors[0].size() == 1 );
}

TEST_CASE( "landauer clock phases" )
{
  sim_params const p;
  uint32_t const cycle = 800;

  /* hold phase means the clock sits exactly at clock_low */
  bool saw_low = false, saw_high = false;
  for ( uint32_t s = 0; s < cycle; ++s )
  {
    double const g = clock_gamma( 0, s, p, cycle );
    CHECK( g >= p.clock_low );
    CHECK( g <= p.clock_high );
    saw_low = saw_low || g == p.clock_low;
    saw_high = saw_high || g == p.clock_high;
  }
  CHECK( saw_low );
  CHECK( saw_high );

  /* zones 0 and 2 are in anti-phase: half a period apart they agree */
  for ( uint32_t s = 0; s < cycle / 2; ++s )
  {
    CHECK( clock_gamma( 0, s, p, cycle ) ==
           doctest::Approx( clock_gamma( 2, s + cycle / 2, p, cycle ) ).epsilon( 1e-12 ) );
  }

  CHECK_THROWS_AS( clock_gamma( 4, 0, p, cycle ), std::invalid_argument );
}

TEST_CASE( "bennett clocking holds in order and releases in reverse" )
{
  sim_params p;
  p.clocking = clocking_scheme::bennett;
  uint32_t const cycle = 800;

  std::vector<uint32_t> hold_start( 4 ), hold_end( 4 );
  for ( int z = 0; z < 4; ++z )
  {
    bool holding = false;
    for ( uint32_t s = 0; s < cycle; ++s )
    {
      bool const low = clock_gamma( z, s, p, cycle ) == p.clock_low;
      if ( low && !holding )
      {
        hold_start[z] = s;
        holding = true;
      }
      if ( holding && low )
        hold_end[z] = s;
    }
    CHECK( holding );
  }
  CHECK( hold_start[0] < hold_start[1] );
  CHECK( hold_start[1] < hold_start[2] );
  CHECK( hold_start[2] < hold_start[3] );
  /* release order is the exact reverse of hold order */
  CHECK( hold_end[3] < hold_end[2] );
  CHECK( hold_end[2] < hold_end[1] );
  CHECK( hold_end[1] < hold_end[0] );
  /* all zones hold simultaneously somewhere in the middle */
  CHECK( hold_start[3] < hold_end[3] );
}

TEST_CASE( "relaxation fixed points" )
{
  sim_params const p;

  SUBCASE( "isolated cell settles at zero" )
  {
    std::vector<qca_cell> layout = { cell_at( 0, 0 ) };
    layout[0].polarization = 0.7;
    auto const kinks = build_kink_matrix( layout, p );
    auto const res = relax( layout, kinks, { p.clock_low }, p );
    CHECK( res.converged );
    CHECK( layout[0].polarization == 0.0 );
  }

  SUBCASE( "cell next to a fixed driver matches the scalar fixed point" )
  {
    std::vector<qca_cell> layout = { cell_at( 0, 0 ), cell_at( 20, 0 ) };
    layout[0].kind = cell_kind::fixed;
    layout[0].polarization = 1.0;
    auto const kinks = build_kink_matrix( layout, p );
    auto const res = relax( layout, kinks, { p.clock_low, p.clock_low }, p );
    CHECK( res.converged );

    double const ek = oracle_kink( layout[0], layout[1], p );
    double const x = ek / ( 2.0 * p.clock_low );
    double const expect = x / std::sqrt( 1.0 + x * x );
    CHECK( layout[1].polarization == doctest::Approx( expect ).epsilon( 1e-6 ) );
    CHECK( layout[1].polarization > 0.0 );
    CHECK( std::abs( layout[1].polarization ) < 1.0 );
  }

  SUBCASE( "fixed-point residual is below tolerance at convergence" )
  {
    auto layout = make_primitive( primitive_kind::majority );
    for ( auto& c : layout )
    {
      if ( c.kind == cell_kind::input )
        c.polarization = 1.0;
    }
    auto const kinks = build_kink_matrix( layout, p );
    std::vector<double> const gammas( layout.size(), p.clock_low );
    auto const res = relax( layout, kinks, gammas, p );
    REQUIRE( res.converged );
    for ( uint32_t i = 0; i < layout.size(); ++i )
    {
      if ( layout[i].kind == cell_kind::fixed || layout[i].kind == cell_kind::input )
        continue;
      double acc = 0;
      for ( auto const& [j, ek] : kinks.neighbors[i] )
        acc += ek * layout[j].polarization;
      double const x = acc / ( 2 * p.clock_low );
      CHECK( std::abs( layout[i].polarization - x / std::sqrt( 1 + x * x ) ) < p.tolerance );
      CHECK( std::abs( layout[i].polarization ) < 1.0 );
    }
  }
}

TEST_CASE( "flipping every driver flips every settled polarization" )
{
  sim_params const p;
  auto layout = make_primitive( primitive_kind::wire90, 5 );
  layout[0].kind = cell_kind::fixed;

  auto run = [&]( double drive ) {
    auto cells = layout;
    cells[0].polarization = drive;
    auto const kinks = build_kink_matrix( cells, p );
    std::vector<double> const gammas( cells.size(), p.clock_low );
    relax( cells, kinks, gammas, p );
    return cells;
  };
  auto const up = run( 1.0 );
  auto const down = run( -1.0 );
  for ( uint32_t i = 0; i < up.size(); ++i )
    CHECK( up[i].polarization == doctest::Approx( -down[i].polarization ).epsilon( 1e-9 ) );
}

TEST_CASE( "a driven wire carries the driver's sign everywhere" )
{
  sim_params const p;
  auto cells = make_primitive( primitive_kind::wire90, 7 );
  cells[0].kind = cell_kind::fixed;
  cells[0].polarization = 1.0;
  auto const kinks = build_kink_matrix( cells, p );
  std::vector<double> const gammas( cells.size(), p.clock_low );
  REQUIRE( relax( cells, kinks, gammas, p ).converged );
  for ( auto const& c : cells )
    CHECK( c.polarization > 0.0 );
}

TEST_CASE( "vector simulation of a wire" )
{
  auto const trace =
      run_vector_simulation( make_primitive( primitive_kind::wire90, 5 ), { "in" }, quick_params() );
  REQUIRE( trace.windows.size() == 2 );
  CHECK( trace.windows[0].outputs[0].second == false );
  CHECK( trace.windows[1].outputs[0].second == true );
  CHECK( trace.windows[0].settled );
  CHECK( trace.windows[1].settled );
  CHECK( trace.unsettled_samples == 0 );
}

TEST_CASE( "rotated wires alternate inversion cell by cell" )
{
  sim_params const p;
  auto cells = make_primitive( primitive_kind::wire45, 6 );
  cells[0].kind = cell_kind::fixed;
  cells[0].polarization = 1.0;
  auto const kinks = build_kink_matrix( cells, p );
  std::vector<double> const gammas( cells.size(), p.clock_low );
  REQUIRE( relax( cells, kinks, gammas, p ).converged );
  for ( uint32_t i = 0; i < cells.size(); ++i )
  {
    bool const expect_positive = i % 2 == 0;
    CHECK_MESSAGE( ( cells[i].polarization > 0 ) == expect_positive, "cell ", i );
  }

  /* an odd-length chain ends inverted, an even-length one does not */
  auto const trace =
      run_vector_simulation( make_primitive( primitive_kind::wire45, 6 ), { "in" }, quick_params() );
  CHECK( trace.windows[1].outputs[0].second == ( ( 6 - 1 ) % 2 == 0 ) );
}

TEST_CASE( "the inverter inverts" )
{
  auto const trace =
      run_vector_simulation( make_primitive( primitive_kind::inverter ), { "in" }, quick_params() );
  REQUIRE( trace.windows.size() == 2 );
  CHECK( trace.windows[0].outputs[0].second == true );
  CHECK( trace.windows[1].outputs[0].second == false );
}

TEST_CASE( "the majority primitive computes all eight vectors" )
{
  auto layout = make_primitive( primitive_kind::majority );
  /* constructor contract: exactly one output cell, east of the center */
  uint32_t outputs = 0;
  double cx = 0, ox = 0;
  for ( auto const& c : layout )
  {
    if ( c.kind == cell_kind::output )
    {
      ++outputs;
      ox = c.x;
    }
    if ( c.label == "center" )
      cx = c.x;
  }
  CHECK( outputs == 1 );
  CHECK( ox > cx );

  auto const trace = run_vector_simulation( layout, { "a", "b", "c" }, quick_params() );
  REQUIRE( trace.windows.size() == 8 );
  for ( uint32_t w = 0; w < 8; ++w )
  {
    auto const& win = trace.windows[w];
    int const ones = win.input_bits[0] + win.input_bits[1] + win.input_bits[2];
    CHECK_MESSAGE( win.outputs[0].second == ( ones >= 2 ), "window ", w );
    CHECK( win.settled );
  }
}

TEST_CASE( "coplanar crossover routes both signals independently" )
{
  auto const trace = run_vector_simulation( make_primitive( primitive_kind::coplanar_crossover ),
                                            { "h_in", "v_in" }, quick_params() );
  REQUIRE( trace.windows.size() == 4 );
  for ( auto const& win : trace.windows )
  {
    for ( auto const& [label, bit] : win.outputs )
    {
      bool const want = label == "h_out" ? win.input_bits[0] : win.input_bits[1];
      CHECK_MESSAGE( bit == want, label );
    }
  }
}

TEST_CASE( "multilayer crossover routes both signals independently" )
{
  auto const trace = run_vector_simulation( make_primitive( primitive_kind::multilayer_crossover ),
                                            { "h_in", "v_in" }, quick_params() );
  for ( auto const& win : trace.windows )
  {
    for ( auto const& [label, bit] : win.outputs )
    {
      bool const want = label == "h_out" ? win.input_bits[0] : win.input_bits[1];
      CHECK_MESSAGE( bit == want, label );
    }
  }
}

TEST_CASE( "primitive constructor contracts" )
{
  CHECK_THROWS_AS( make_primitive( primitive_kind::wire90, 1 ), std::invalid_argument );
  auto const wire = make_primitive( primitive_kind::wire90, 4 );
  REQUIRE( wire.size() == 4 );
  for ( uint32_t i = 1; i < wire.size(); ++i )
    CHECK( wire[i].x - wire[i - 1].x == 20.0 );
}

TEST_CASE( "layout text round trip" )
{
  auto const layout = make_primitive( primitive_kind::coplanar_crossover );
  auto const text = emit_layout( layout );
  auto const back = parse_layout( text );
  REQUIRE( back.size() == layout.size() );
  for ( uint32_t i = 0; i < layout.size(); ++i )
  {
    CHECK( back[i].x == layout[i].x );
    CHECK( back[i].kind == layout[i].kind );
    CHECK( back[i].rotation == layout[i].rotation );
    CHECK( back[i].label == layout[i].label );
  }
  CHECK_THROWS_AS( parse_layout( "cell 0 0 0 9 normal\n" ), revmaj::parse_error );
  CHECK_THROWS_AS( parse_layout( "dot 0 0 0 0 normal\n" ), revmaj::parse_error );
}

TEST_CASE( "trace export carries samples and digitized vectors" )
{
  auto const trace =
      run_vector_simulation( make_primitive( primitive_kind::wire90, 3 ), { "in" }, quick_params() );
  auto const csv = trace_to_csv( trace );
  CHECK( csv.find( "sample,in" ) == 0 );
  CHECK( csv.find( "# vector 1 -> out=1" ) != std::string::npos );
}
