#include "revmaj/reversible.hpp"

#include "revmaj/netlist.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace revmaj
{

namespace
{

uint64_t collision_pairs( std::vector<std::vector<bool>> const& tuples )
{
  std::map<std::vector<bool>, uint64_t> counts;
  for ( auto const& t : tuples )
    ++counts[t];
  uint64_t pairs = 0;
  for ( auto const& [t, k] : counts )
    pairs += k * ( k - 1 ) / 2;
  return pairs;
}

std::string fresh_garbage_name( truth_table const& table, uint32_t& counter )
{
  for ( ;; )
  {
    std::string name = "Y" + std::to_string( counter++ );
    bool taken = std::find( table.input_names.begin(), table.input_names.end(), name ) !=
                 table.input_names.end();
    taken = taken || std::find( table.output_names.begin(), table.output_names.end(), name ) !=
                         table.output_names.end();
    if ( !taken )
      return name;
  }
}

} // namespace

reversible_result reversibilize( truth_table const& table )
{
  uint32_t const n = table.num_inputs();
  uint32_t const rows = table.num_rows();

  reversible_result res;
  res.table = table;
  for ( auto const& col : table.columns )
    res.ones_count.push_back( col.count_ones() );

  auto tuple_of = [&]( uint32_t r, std::vector<bitvec> const& cols ) {
    std::vector<bool> t;
    t.reserve( cols.size() );
    for ( auto const& c : cols )
      t.push_back( c.get( r ) );
    return t;
  };

  auto collisions_with = [&]( std::vector<bitvec> const& cols ) {
    std::vector<std::vector<bool>> tuples;
    tuples.reserve( rows );
    for ( uint32_t r = 0; r < rows; ++r )
      tuples.push_back( tuple_of( r, cols ) );
    return collision_pairs( tuples );
  };

  std::vector<uint32_t> appended;
  auto present_as_output = [&]( uint32_t i ) {
    auto const col = input_column( n, i );
    for ( auto const& c : res.table.columns )
    {
      if ( c == col )
        return true;
    }
    return false;
  };

  while ( collisions_with( res.table.columns ) != 0 || res.table.num_outputs() < n )
  {
    std::optional<uint32_t> pick;
    uint64_t pick_collisions = 0;
    for ( uint32_t i = 0; i < n; ++i )
    {
      if ( present_as_output( i ) )
        continue;
      auto cols = res.table.columns;
      cols.push_back( input_column( n, i ) );
      uint64_t const c = collisions_with( cols );
      if ( !pick || c < pick_collisions )
      {
        pick = i;
        pick_collisions = c;
      }
    }
    if ( !pick )
    {
      /* every input column already present; duplicates only pad the width */
      for ( uint32_t i = 0; i < n && res.table.num_outputs() < n; ++i )
        appended.push_back( i );
      break;
    }
    appended.push_back( *pick );
    res.table.columns.push_back( input_column( n, *pick ) );
    res.table.output_names.push_back( "__pending" );
    res.table.output_names.back() = "__g" + std::to_string( appended.size() );
  }

  /* printed fixture order: when every input was appended, the garbage
     columns run second input, third, ..., then first */
  std::vector<uint32_t> final_order = appended;
  {
    std::set<uint32_t> const as_set( appended.begin(), appended.end() );
    if ( as_set.size() == n && appended.size() == n )
    {
      final_order.clear();
      for ( uint32_t i = 1; i < n; ++i )
        final_order.push_back( i );
      final_order.push_back( 0 );
    }
  }

  /* rebuild the extended table in final order with fresh names */
  res.table.columns.resize( table.num_outputs() );
  res.table.output_names.resize( table.num_outputs() );
  uint32_t name_counter = table.num_outputs() + 1;
  for ( uint32_t i : final_order )
  {
    std::string const name = fresh_garbage_name( res.table, name_counter );
    res.table.output_names.push_back( name );
    res.table.columns.push_back( input_column( n, i ) );
    res.garbage.emplace_back( name, i );
  }
  return res;
}

garbage_bound_result garbage_bound( uint32_t num_inputs, uint32_t ones )
{
  if ( num_inputs == 0 || num_inputs > max_inputs )
    throw std::invalid_argument( "garbage_bound: invalid input count" );
  uint32_t const rows = 1u << num_inputs;
  if ( ones > rows )
    throw std::invalid_argument( "garbage_bound: ones exceeds row count" );
  if ( ones != rows / 2 )
    return { num_inputs, num_inputs };
  return { num_inputs - 1, num_inputs };
}

namespace
{

using rowfn = std::function<bool( bool, bool, bool )>;

truth_table table3( std::string const& out_name, std::vector<rowfn> const& fns,
                    std::vector<std::string> const& out_names,
                    std::vector<std::string> const& in_names )
{
  truth_table t;
  t.input_names = in_names;
  t.output_names = out_names.empty() ? std::vector<std::string>{ out_name } : out_names;
  uint32_t const rows = 8;
  for ( auto const& f : fns )
  {
    bitvec col( rows );
    for ( uint32_t r = 0; r < rows; ++r )
    {
      bool const a = ( r >> 2 ) & 1, b = ( r >> 1 ) & 1, c = r & 1;
      col.set( r, f( a, b, c ) );
    }
    t.columns.push_back( col );
  }
  return t;
}

bool maj3( bool x, bool y, bool z )
{
  return ( static_cast<int>( x ) + y + z ) >= 2;
}

functional_status evaluate_status( gate_fixture const& fx )
{
  if ( fx.published_netlist.empty() )
    return functional_status::verified;
  auto const net = parse_netlist( fx.published_netlist );
  return equivalence_check( net, fx.spec ).matched ? functional_status::verified
                                                   : functional_status::suspected_typo;
}

gate_fixture make_fixture( std::string name, truth_table spec, std::string netlist,
                           std::optional<cost_vector> cost, std::optional<uint32_t> maj = {},
                           std::optional<uint32_t> nots = {}, std::optional<uint32_t> clk = {} )
{
  gate_fixture fx;
  fx.name = std::move( name );
  fx.spec = std::move( spec );
  fx.published_netlist = std::move( netlist );
  fx.published_cost = cost;
  fx.published_majority = maj;
  fx.published_not = nots;
  fx.published_clockzones = clk;
  fx.status = evaluate_status( fx );
  return fx;
}

std::vector<gate_fixture> build_fixtures()
{
  std::vector<gate_fixture> out;

  /* Fredkin: controlled swap of b and c */
  out.push_back( make_fixture(
      "fredkin",
      table3( "", { []( bool a, bool b, bool ) { return a; },
                    []( bool a, bool b, bool c ) { return a ? c : b; },
                    []( bool a, bool b, bool c ) { return a ? b : c; } },
              { "P", "Q", "R" }, { "a", "b", "c" } ),
      "P = a\n"
      "Q = Maj(c,Maj(b,a,1),Maj(a',b,0))\n"
      "R = Maj(c,Maj(a',b,1),Maj(a,b,0))\n",
      cost_vector{ 6, 2, 1, 4 } ) );

  /* Toffoli: c inverts when both controls are one */
  out.push_back( make_fixture(
      "toffoli",
      table3( "", { []( bool a, bool, bool ) { return a; },
                    []( bool, bool b, bool ) { return b; },
                    []( bool a, bool b, bool c ) { return ( a && b ) != c; } },
              { "P", "Q", "R" }, { "a", "b", "c" } ),
      "P = a\n"
      "Q = b\n"
      "R = Maj(Maj(a,b,c'),Maj(a,c,1),Maj(b,c',0))\n",
      cost_vector{ 4, 2, 2, 2 } ) );

  /* Peres: Q = a xor b, R = ab xor c */
  out.push_back( make_fixture(
      "peres",
      table3( "", { []( bool a, bool, bool ) { return a; },
                    []( bool a, bool b, bool ) { return a != b; },
                    []( bool a, bool b, bool c ) { return ( a && b ) != c; } },
              { "P", "Q", "R" }, { "a", "b", "c" } ),
      "P = a\n"
      "Q = Maj(b,Maj(a,b,0),Maj(a,b',0))\n"
      "R = Maj(Maj(Maj(a,b,0),c',0),Maj(Maj(a,b,0),c',1),c)\n",
      cost_vector{ 6, 3, 3, 4 } ) );

  /* RUG: majority, ab + a'c', b xor c */
  out.push_back( make_fixture(
      "rug",
      table3( "", { []( bool a, bool b, bool c ) { return maj3( a, b, c ); },
                    []( bool a, bool b, bool c ) { return ( a && b ) || ( !a && !c ); },
                    []( bool, bool b, bool c ) { return b != c; } },
              { "f1", "f2", "f3" }, { "a", "b", "c" } ),
      "f1 = Maj(a,b,c)\n"
      "f2 = Maj(c',Maj(a',b,1),Maj(a,b,0))\n"
      "f3 = Maj(c,Maj(b,c',0),Maj(b,c,0))\n",
      cost_vector{ 7, 2, 3, 4 } ) );

  /* reversible full adder after the specification used in the comparison */
  out.push_back( make_fixture(
      "rfa",
      table3( "", { []( bool a, bool b, bool c ) { return ( a != b ) != c; },
                    []( bool a, bool b, bool c ) { return maj3( a, b, c ); },
                    []( bool a, bool b, bool c ) { return maj3( !a, b, c ); },
                    []( bool a, bool b, bool c ) { return maj3( a, b, c ); },
                    []( bool a, bool b, bool c ) { return maj3( a, b, !c ); } },
              { "Sum", "Cout", "Gar1", "Gar2", "Gar3" }, { "a", "b", "cin" } ),
      "Sum = Maj(Maj(a,b,cin),a,Maj(a',b,cin))\n"
      "Cout = Maj(a,b,cin)\n"
      "Gar1 = Maj(a',b,cin)\n"
      "Gar2 = Maj(a,b,cin)\n"
      "Gar3 = Maj(a,b,cin')\n",
      cost_vector{ 4, 2, 3, 0 } ) );

  /* the 13 standard three-variable benchmark functions */
  struct bench_row
  {
    char const* name;
    rowfn fn;
    char const* netlist;
    uint32_t maj, nots, clk;
  };
  std::vector<bench_row> rows = {
      { "F1", []( bool a, bool b, bool c ) { return a && !b && c; },
        "F1 = Maj(Maj(A,B',0),C,0)\n", 2, 1, 3 },
      { "F2", []( bool a, bool b, bool ) { return a && b; },
        "F2 = Maj(A,B,0)\n", 1, 0, 1 },
      { "F3", []( bool a, bool b, bool c ) { return ( !a && b && c ) || ( !a && !b && !c ); },
        "F3 = Maj(Maj(A',B,C'),Maj(A',B',C),0)\n", 3, 3, 4 },
      { "F4", []( bool a, bool b, bool c ) { return ( !a && b && c ) || ( a && !b && !c ); },
        "F4 = Maj(Maj(Maj(A',B,0),C,0),Maj(Maj(A,B',0),C',0),1)\n", 5, 3, 4 },
      { "F5", []( bool a, bool b, bool c ) { return ( !a && b ) || ( b && !c ); },
        "F5 = Maj(Maj(A,C,0),B,0)\n", 2, 1, 3 },
      { "F6", []( bool a, bool b, bool c ) { return ( a && !b ) || ( !a && b && c ); },
        "F6 = Maj(Maj(A,B,C),Maj(A,B',0),Maj(A',B',1))\n", 4, 2, 4 },
      { "F7",
        []( bool a, bool b, bool c ) {
          return ( !a && b && c ) || ( a && b && !c ) || ( !a && !b && !c );
        },
        "F7 = Maj(Maj(A',B,C'),Maj(A',B',C),Maj(A,C',0))\n", 4, 3, 4 },
      { "F8", []( bool a, bool, bool ) { return a; }, "F8 = A\n", 0, 0, 1 },
      { "F9", []( bool a, bool b, bool c ) { return maj3( a, b, c ); },
        "F9 = Maj(A,B,C)\n", 1, 0, 2 },
      { "F10", []( bool a, bool b, bool c ) { return ( !a && b ) || ( !b && c ); },
        "F10 = Maj(C,Maj(A',B',1),Maj(B,C',0))\n", 3, 2, 3 },
      { "F11",
        []( bool a, bool b, bool c ) { return ( !a && b ) || ( b && c ) || ( a && !b && !c ); },
        "F11 = Maj(Maj(A,B,C'),Maj(B',C',0),Maj(A',B,C))\n", 4, 3, 4 },
      { "F12", []( bool a, bool b, bool ) { return ( a && b ) || ( !a && !b ); },
        "F12 = Maj(B,Maj(B',A,1),Maj(A',B',0))\n", 3, 2, 3 },
      { "F13",
        []( bool a, bool b, bool c ) {
          return ( a && b && !c ) || ( !a && !b && !c ) || ( a && !b && c ) || ( !a && b && c );
        },
        "F13 = Maj(Maj(A,B',C'),B,Maj(A',B',C))\n", 3, 3, 3 },
  };
  for ( auto& row : rows )
  {
    out.push_back( make_fixture( row.name, table3( row.name, { row.fn }, {}, { "A", "B", "C" } ),
                                 row.netlist, std::nullopt, row.maj, row.nots, row.clk ) );
  }
  return out;
}

} // namespace

std::vector<gate_fixture> builtin_fixtures()
{
  static std::vector<gate_fixture> const fixtures = build_fixtures();
  return fixtures;
}

std::optional<gate_fixture> find_fixture( std::string const& name )
{
  for ( auto const& fx : builtin_fixtures() )
  {
    if ( fx.name == name )
      return fx;
  }
  return std::nullopt;
}

std::string layout_comparison_note()
{
  return "physical cell-count and area comparisons are not reproduced: the prior\n"
         "layouts exist only as published images without coordinates, so no\n"
         "faithful re-simulation is possible. Logic-level costs are the\n"
         "supported comparison.";
}

} // namespace revmaj
