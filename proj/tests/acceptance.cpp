/*!
  \file acceptance.cpp
  \brief End-to-end acceptance suite; prints one pass/fail line per criterion.
*/

#include <fmt/format.h>

#include <revmaj/netlist.hpp>
#include <revmaj/qca.hpp>
#include <revmaj/reversible.hpp>
#include <revmaj/synth.hpp>
#include <revmaj/truth_table.hpp>

#include <chrono>
#include <climits>
#include <cmath>
#include <map>
#include <vector>

using namespace revmaj;

namespace
{

int failures = 0;

void report( int criterion, bool pass, std::string const& detail )
{
  fmt::print( "criterion {}: {} - {}\n", criterion, pass ? "PASS" : "FAIL", detail );
  if ( !pass )
    ++failures;
}

double seconds_since( std::chrono::steady_clock::time_point t0 )
{
  return std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
}

/* ------------------------------------------------------------------ */
/* Independent depth-2 oracle over raw 8-bit columns                    */
/* ------------------------------------------------------------------ */

uint8_t maj8( uint8_t x, uint8_t y, uint8_t z )
{
  return ( x & y ) | ( y & z ) | ( z & x );
}

struct depth2_oracle
{
  std::map<uint8_t, int> term_cost;
  std::vector<uint8_t> term_cols;

  depth2_oracle()
  {
    uint8_t const leaves[8] = { 0xF0, 0x0F, 0xCC, 0x33, 0xAA, 0x55, 0x00, 0xFF };
    for ( uint8_t l : leaves )
      term_cost[l] = 0;
    for ( int i = 0; i < 8; ++i )
      for ( int j = i + 1; j < 8; ++j )
        for ( int k = j + 1; k < 8; ++k )
        {
          uint8_t const m = maj8( leaves[i], leaves[j], leaves[k] );
          term_cost.emplace( m, 1 );
        }
    for ( auto const& [col, cost] : term_cost )
      term_cols.push_back( col );
  }

  int min_gates( uint8_t f ) const
  {
    if ( auto it = term_cost.find( f ); it != term_cost.end() )
      return it->second;
    int best = INT_MAX;
    for ( size_t i = 0; i < term_cols.size(); ++i )
      for ( size_t j = i + 1; j < term_cols.size(); ++j )
        for ( size_t k = j + 1; k < term_cols.size(); ++k )
        {
          if ( maj8( term_cols[i], term_cols[j], term_cols[k] ) != f )
            continue;
          best = std::min( best, 1 + term_cost.at( term_cols[i] ) + term_cost.at( term_cols[j] ) +
                                     term_cost.at( term_cols[k] ) );
        }
    return best;
  }
};

bitvec col_of_u8( uint8_t f )
{
  bitvec v( 8 );
  for ( uint32_t r = 0; r < 8; ++r )
    v.set( r, ( f >> r ) & 1u );
  return v;
}

uint8_t u8_of_col( bitvec const& v )
{
  uint8_t f = 0;
  for ( uint32_t r = 0; r < 8; ++r )
    f |= static_cast<uint8_t>( v.get( r ) ) << r;
  return f;
}

/* ------------------------------------------------------------------ */

void criterion1_bench13()
{
  auto const t0 = std::chrono::steady_clock::now();
  struct target
  {
    char const* name;
    uint32_t maj, nots;
  };
  std::vector<target> const targets = {
      { "F1", 2, 1 },  { "F2", 1, 0 },  { "F3", 3, 3 }, { "F4", 5, 3 },  { "F5", 2, 1 },
      { "F6", 4, 2 },  { "F7", 4, 3 },  { "F8", 0, 0 }, { "F9", 1, 0 },  { "F10", 3, 2 },
      { "F11", 4, 3 }, { "F12", 3, 2 }, { "F13", 3, 3 } };

  std::string detail;
  bool pass = true;
  for ( auto const& t : targets )
  {
    auto const fx = find_fixture( t.name );
    if ( !fx )
    {
      pass = false;
      detail += fmt::format( " {} missing;", t.name );
      continue;
    }
    auto const rev = reversibilize( fx->spec );
    auto const res = synthesize_function( rev.table );
    bool const ok =
        res.cost.majority_count <= t.maj && res.cost.not_count <= t.nots;
    if ( !ok )
    {
      pass = false;
      detail += fmt::format( " {}: got {}/{} want <= {}/{};", t.name, res.cost.majority_count,
                             res.cost.not_count, t.maj, t.nots );
    }
  }
  double const dt = seconds_since( t0 );
  if ( dt >= 10.0 )
    pass = false;
  report( 1, pass,
          detail.empty()
              ? fmt::format( "all 13 functions at or below published majority/NOT counts "
                             "({:.2f} s, budget 10 s)",
                             dt )
              : detail );
}

void criterion2_table6()
{
  bool pass = true;
  std::string detail;

  /* Fredkin must land exactly on the published row */
  {
    auto const fx = *find_fixture( "fredkin" );
    auto const res = synthesize_function( fx.spec );
    cost_vector const want{ 6, 2, 1, 4 };
    auto const published = parse_netlist( fx.published_netlist );
    bool const functionally_identical =
        published.evaluate_columns() == res.netlist.evaluate_columns();
    if ( res.cost != want || !functionally_identical )
    {
      pass = false;
      detail += fmt::format( " fredkin got {} want {};", res.cost.to_string(), want.to_string() );
    }
  }

  /* the other gates: exhaustively correct, cost no worse than the row */
  struct gate_target
  {
    char const* name;
    uint32_t maj, levels;
  };
  for ( auto const& g : std::vector<gate_target>{
            { "toffoli", 4, 2 }, { "rug", 7, 2 }, { "peres", 6, 3 }, { "rfa", 4, 2 } } )
  {
    auto const fx = *find_fixture( g.name );
    auto const res = synthesize_function( fx.spec );
    bool const correct = equivalence_check( res.netlist, fx.spec ).matched;
    bool const cost_ok = res.cost.majority_count <= g.maj && res.cost.levels <= g.levels;
    if ( !correct || !cost_ok )
    {
      pass = false;
      detail += fmt::format( " {}: {} gates / {} levels vs {}/{}{};", g.name,
                             res.cost.majority_count, res.cost.levels, g.maj, g.levels,
                             correct ? "" : " (INCORRECT)" );
      if ( std::string( g.name ) == "toffoli" )
      {
        /* independent enumeration: is a two-level circuit of at most four
           gates for ab xor c possible at all? */
        depth2_oracle const oracle;
        auto const toffoli_r = ( input_column( 3, 0 ) & input_column( 3, 1 ) ) ^ input_column( 3, 2 );
        int const depth2 = oracle.min_gates( u8_of_col( toffoli_r ) );
        detail += fmt::format(
            " [exhaustive depth-2 enumeration: ab^c {} expressible as Maj(T1,T2,T3) over "
            "one-gate terms, so 4 gates / 2 levels is {}]",
            depth2 == INT_MAX ? "is NOT" : "IS",
            depth2 == INT_MAX ? "unattainable" : "attainable" );
      }
    }
  }

  /* published-netlist typos must be detected */
  for ( auto const& name : { "toffoli", "peres", "rug", "rfa" } )
  {
    auto const fx = *find_fixture( name );
    auto const rep = equivalence_check( parse_netlist( fx.published_netlist ), fx.spec );
    if ( rep.matched || fx.status != functional_status::suspected_typo )
    {
      pass = false;
      detail += fmt::format( " {} typo undetected;", name );
    }
  }

  report( 2, pass,
          detail.empty() ? "fredkin exact (6/2/1/4); toffoli, rug, peres, rfa correct within "
                           "published cost; published typos detected"
                         : detail );
}

void criterion3_reversibilizer()
{
  bool pass = true;
  std::string detail;
  for ( auto const& fx : builtin_fixtures() )
  {
    if ( !fx.published_majority )
      continue; // gates handled elsewhere
    if ( fx.spec.columns[0].count_ones() == 4 )
      continue; // balanced outputs follow the other proposition case
    auto const res = reversibilize( fx.spec );
    bool ok = res.garbage.size() == 3 && is_injective( res.table );
    for ( uint32_t g = 0; g < res.garbage.size() && ok; ++g )
      ok = res.table.columns[1 + g] == input_column( 3, res.garbage[g].second );
    /* projection recovers the original */
    truth_table projected = res.table;
    projected.columns.resize( 1 );
    projected.output_names.resize( 1 );
    ok = ok && projected.columns[0] == fx.spec.columns[0];
    if ( !ok )
    {
      pass = false;
      detail += fmt::format( " {} failed;", fx.name );
    }
  }
  report( 3, pass,
          detail.empty() ? "every unbalanced benchmark gains exactly 3 input-copy garbage "
                           "columns, one-to-one, projection exact"
                         : detail );
}

void criterion4_sweep()
{
  auto const t0 = std::chrono::steady_clock::now();
  depth2_oracle const oracle;
  std::vector<std::string> const abc{ "a", "b", "c" };

  uint32_t sound = 0, optimal = 0, expressible = 0;
  std::string detail;
  bool pass = true;
  for ( uint32_t f = 0; f < 256; ++f )
  {
    truth_table t;
    t.input_names = abc;
    t.output_names = { "f" };
    t.columns = { col_of_u8( static_cast<uint8_t>( f ) ) };
    auto const res = synthesize_function( t );
    if ( equivalence_check( res.netlist, t ).matched )
      ++sound;
    else
    {
      pass = false;
      detail += fmt::format( " {:#04x} unsound;", f );
    }
    int const want = oracle.min_gates( static_cast<uint8_t>( f ) );
    if ( want == INT_MAX )
      continue;
    ++expressible;
    if ( res.cost.majority_count == static_cast<uint32_t>( want ) )
      ++optimal;
    else
    {
      pass = false;
      detail += fmt::format( " {:#04x}: {} vs oracle {};", f, res.cost.majority_count, want );
    }
  }
  double const dt = seconds_since( t0 );
  if ( dt >= 60.0 )
    pass = false;
  report( 4, pass,
          detail.empty()
              ? fmt::format( "256/256 sound, {}/{} depth-2-expressible functions at the oracle "
                             "minimum ({:.2f} s, budget 60 s)",
                             optimal, expressible, dt )
              : detail );
}

void criterion5_landauer()
{
  double const e = landauer_energy( 300.15 );
  bool const pass = e >= 2.84e-21 && e <= 2.95e-21;
  report( 5, pass, fmt::format( "landauer_energy(300.15 K) = {:.3e} J in [2.84e-21, 2.95e-21]", e ) );
}

void criterion6_simulator()
{
  auto const t0 = std::chrono::steady_clock::now();
  qca::sim_params const defaults; // exactly the published settings
  bool pass = true;
  std::string detail;

  /* majority gate: all eight vectors */
  {
    auto const trace =
        qca::run_vector_simulation( qca::make_primitive( qca::primitive_kind::majority ),
                                    { "a", "b", "c" }, defaults );
    for ( uint32_t w = 0; w < trace.windows.size(); ++w )
    {
      auto const& win = trace.windows[w];
      int const ones = win.input_bits[0] + win.input_bits[1] + win.input_bits[2];
      if ( win.outputs[0].second != ( ones >= 2 ) || !win.settled )
      {
        pass = false;
        detail += fmt::format( " majority vector {} wrong;", w );
      }
    }
  }

  /* wire propagates, inverter inverts */
  {
    auto const wire = qca::run_vector_simulation(
        qca::make_primitive( qca::primitive_kind::wire90, 5 ), { "in" }, defaults );
    if ( wire.windows[0].outputs[0].second != false || wire.windows[1].outputs[0].second != true )
    {
      pass = false;
      detail += " wire90 does not propagate;";
    }
    auto const inv = qca::run_vector_simulation(
        qca::make_primitive( qca::primitive_kind::inverter ), { "in" }, defaults );
    if ( inv.windows[0].outputs[0].second != true || inv.windows[1].outputs[0].second != false )
    {
      pass = false;
      detail += " inverter does not invert;";
    }
  }

  /* rotated wire alternates inversion cell by cell */
  {
    auto cells = qca::make_primitive( qca::primitive_kind::wire45, 6 );
    cells[0].kind = qca::cell_kind::fixed;
    cells[0].polarization = 1.0;
    auto const kinks = qca::build_kink_matrix( cells, defaults );
    std::vector<double> const gammas( cells.size(), defaults.clock_low );
    qca::relax( cells, kinks, gammas, defaults );
    for ( uint32_t i = 0; i < cells.size(); ++i )
    {
      if ( ( cells[i].polarization > 0 ) != ( i % 2 == 0 ) )
      {
        pass = false;
        detail += fmt::format( " wire45 cell {} sign;", i );
      }
    }
  }

  /* polarization-inversion symmetry and the fixed-point residual */
  {
    auto base = qca::make_primitive( qca::primitive_kind::majority );
    auto run = [&]( double sa, double sb, double sc ) {
      auto cells = base;
      double const drive[3] = { sa, sb, sc };
      uint32_t input_index = 0;
      for ( auto& c : cells )
      {
        if ( c.kind == qca::cell_kind::input )
          c.polarization = drive[input_index++];
      }
      auto const kinks = qca::build_kink_matrix( cells, defaults );
      std::vector<double> const gammas( cells.size(), defaults.clock_low );
      auto const res = qca::relax( cells, kinks, gammas, defaults );
      if ( !res.converged )
      {
        pass = false;
        detail += " relax did not converge;";
      }
      for ( uint32_t i = 0; i < cells.size(); ++i )
      {
        if ( cells[i].kind != qca::cell_kind::normal && cells[i].kind != qca::cell_kind::output )
          continue;
        double acc = 0;
        for ( auto const& [j, ek] : kinks.neighbors[i] )
          acc += ek * cells[j].polarization;
        double const x = acc / ( 2 * defaults.clock_low );
        if ( std::abs( cells[i].polarization - x / std::sqrt( 1 + x * x ) ) >= defaults.tolerance )
        {
          pass = false;
          detail += fmt::format( " residual at cell {};", i );
        }
      }
      return cells;
    };
    auto const up = run( 1, -1, 1 );
    auto const down = run( -1, 1, -1 );
    for ( uint32_t i = 0; i < up.size(); ++i )
    {
      if ( std::abs( up[i].polarization + down[i].polarization ) > 1e-9 )
      {
        pass = false;
        detail += fmt::format( " inversion symmetry at cell {};", i );
      }
    }
  }

  double const dt = seconds_since( t0 );
  if ( dt >= 60.0 )
    pass = false;
  report( 6, pass,
          detail.empty()
              ? fmt::format( "majority 8/8, wire, inverter, rotated wire, inversion symmetry, "
                             "fixed-point residual, all at published defaults ({:.2f} s, "
                             "budget 60 s)",
                             dt )
              : detail );
}

void criterion7_area_note()
{
  auto const note = layout_comparison_note();
  bool const pass = note.find( "not reproduced" ) != std::string::npos;
  report( 7, pass, "cell-count/area comparison excluded with a documented note" );
}

} // namespace

int main()
{
  criterion1_bench13();
  criterion2_table6();
  criterion3_reversibilizer();
  criterion4_sweep();
  criterion5_landauer();
  criterion6_simulator();
  criterion7_area_note();
  if ( failures != 0 )
    fmt::print( "{} criterion(s) failed\n", failures );
  else
    fmt::print( "all criteria passed\n" );
  return failures == 0 ? 0 : 1;
}
