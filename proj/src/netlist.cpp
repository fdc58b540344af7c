#include "revmaj/netlist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace revmaj
{

namespace
{
constexpr double k_boltzmann = 1.380649e-23; // J/K
} // namespace

maj_netlist::maj_netlist( std::vector<std::string> input_names )
{
  for ( auto& n : input_names )
    add_input( std::move( n ) );
}

uint32_t maj_netlist::add_input( std::string name )
{
  uint32_t const id = static_cast<uint32_t>( nodes_.size() );
  nodes_.push_back( { node_kind::input, static_cast<uint32_t>( input_names_.size() ), 0, 0 } );
  input_names_.push_back( std::move( name ) );
  input_nodes_.push_back( id );
  return id;
}

uint32_t maj_netlist::get_input( uint32_t input_index ) const
{
  return input_nodes_.at( input_index );
}

uint32_t maj_netlist::add_constant( bool value )
{
  nodes_.push_back( { node_kind::constant, value ? 1u : 0u, 0, 0 } );
  return static_cast<uint32_t>( nodes_.size() - 1 );
}

uint32_t maj_netlist::add_not( uint32_t child )
{
  if ( child >= nodes_.size() )
    throw std::invalid_argument( "add_not: unbound node reference" );
  nodes_.push_back( { node_kind::inverter, child, 0, 0 } );
  return static_cast<uint32_t>( nodes_.size() - 1 );
}

uint32_t maj_netlist::add_majority( uint32_t a, uint32_t b, uint32_t c )
{
  if ( a >= nodes_.size() || b >= nodes_.size() || c >= nodes_.size() )
    throw std::invalid_argument( "add_majority: unbound node reference" );
  nodes_.push_back( { node_kind::majority, a, b, c } );
  return static_cast<uint32_t>( nodes_.size() - 1 );
}

void maj_netlist::add_output( std::string name, uint32_t node_id )
{
  if ( node_id >= nodes_.size() )
    throw std::invalid_argument( "add_output: unbound node reference" );
  outputs_.emplace_back( std::move( name ), node_id );
}

std::vector<bool> maj_netlist::evaluate( std::vector<bool> const& assignment ) const
{
  if ( assignment.size() != input_names_.size() )
    throw std::invalid_argument( "evaluate: assignment width does not match input count" );
  std::vector<bool> value( nodes_.size() );
  for ( size_t i = 0; i < nodes_.size(); ++i )
  {
    auto const& nd = nodes_[i];
    switch ( nd.kind )
    {
    case node_kind::input:
      value[i] = assignment[nd.a];
      break;
    case node_kind::constant:
      value[i] = nd.a != 0;
      break;
    case node_kind::inverter:
      value[i] = !value[nd.a];
      break;
    case node_kind::majority:
      value[i] = ( static_cast<int>( value[nd.a] ) + value[nd.b] + value[nd.c] ) >= 2;
      break;
    }
  }
  std::vector<bool> out;
  out.reserve( outputs_.size() );
  for ( auto const& [name, id] : outputs_ )
    out.push_back( value[id] );
  return out;
}

namespace
{

std::vector<bitvec> eval_all_nodes( maj_netlist const& net, std::vector<bitvec> const& input_cols )
{
  auto const& nodes = net.nodes();
  if ( input_cols.size() != net.num_inputs() )
    throw std::invalid_argument( "evaluate_columns: wrong number of input columns" );
  uint32_t const rows = input_cols.empty() ? 1u : input_cols[0].size();
  std::vector<bitvec> col( nodes.size() );
  for ( size_t i = 0; i < nodes.size(); ++i )
  {
    auto const& nd = nodes[i];
    switch ( nd.kind )
    {
    case maj_netlist::node_kind::input:
      col[i] = input_cols[nd.a];
      break;
    case maj_netlist::node_kind::constant:
      col[i] = bitvec( rows, nd.a != 0 );
      break;
    case maj_netlist::node_kind::inverter:
      col[i] = ~col[nd.a];
      break;
    case maj_netlist::node_kind::majority:
      col[i] = bitvec::majority( col[nd.a], col[nd.b], col[nd.c] );
      break;
    }
  }
  return col;
}

} // namespace

std::vector<bitvec> maj_netlist::evaluate_columns() const
{
  uint32_t const n = num_inputs();
  std::vector<bitvec> input_cols;
  for ( uint32_t i = 0; i < n; ++i )
    input_cols.push_back( input_column( n, i ) );
  auto const col = eval_all_nodes( *this, input_cols );
  std::vector<bitvec> out;
  for ( auto const& [name, id] : outputs_ )
    out.push_back( col[id] );
  return out;
}

bitvec maj_netlist::node_column( uint32_t node_id ) const
{
  uint32_t const n = num_inputs();
  std::vector<bitvec> input_cols;
  for ( uint32_t i = 0; i < n; ++i )
    input_cols.push_back( input_column( n, i ) );
  return eval_all_nodes( *this, input_cols ).at( node_id );
}

match_report equivalence_check( maj_netlist const& net, truth_table const& table )
{
  /* outputs must agree as name sets */
  std::map<std::string, uint32_t> net_outputs;
  for ( auto const& [name, id] : net.outputs() )
    net_outputs[name] = id;
  if ( net_outputs.size() != table.num_outputs() )
    throw std::invalid_argument( "equivalence_check: output arity mismatch" );
  for ( auto const& name : table.output_names )
  {
    if ( net_outputs.find( name ) == net_outputs.end() )
      throw std::invalid_argument( "equivalence_check: netlist has no output '" + name + "'" );
  }

  /* every netlist input must be a table input */
  uint32_t const n = table.num_inputs();
  std::vector<bitvec> driven;
  for ( auto const& in : net.input_names() )
  {
    auto const it = std::find( table.input_names.begin(), table.input_names.end(), in );
    if ( it == table.input_names.end() )
      throw std::invalid_argument( "equivalence_check: netlist input '" + in + "' not in table" );
    driven.push_back( input_column( n, static_cast<uint32_t>( it - table.input_names.begin() ) ) );
  }

  auto const all = eval_all_nodes( net, driven );
  for ( uint32_t j = 0; j < table.num_outputs(); ++j )
  {
    auto const& want = table.columns[j];
    auto const& got = all[net_outputs[table.output_names[j]]];
    if ( got == want )
      continue;
    for ( uint32_t r = 0; r < table.num_rows(); ++r )
    {
      if ( got.get( r ) != want.get( r ) )
        return { false, r, table.output_names[j] };
    }
  }
  return { true, 0, "" };
}

namespace
{

struct canon_key
{
  maj_netlist::node_kind kind;
  uint32_t a, b, c;

  bool operator==( canon_key const& o ) const
  {
    return kind == o.kind && a == o.a && b == o.b && c == o.c;
  }
};

struct canon_key_hash
{
  size_t operator()( canon_key const& k ) const
  {
    size_t h = static_cast<size_t>( k.kind );
    h = h * 0x9e3779b97f4a7c15ull + k.a;
    h = h * 0x9e3779b97f4a7c15ull + k.b;
    h = h * 0x9e3779b97f4a7c15ull + k.c;
    return h;
  }
};

/* rebuilds reachable nodes with structural hashing and local reductions */
struct rebuilder
{
  explicit rebuilder( maj_netlist const& src ) : src_( src ), dst_( src.input_names() )
  {
    for ( uint32_t i = 0; i < src.num_inputs(); ++i )
      strash_[{ maj_netlist::node_kind::input, i, 0, 0 }] = dst_.get_input( i );
  }

  uint32_t constant( bool v )
  {
    canon_key const k{ maj_netlist::node_kind::constant, v ? 1u : 0u, 0, 0 };
    if ( auto it = strash_.find( k ); it != strash_.end() )
      return it->second;
    return strash_[k] = dst_.add_constant( v );
  }

  uint32_t inverter( uint32_t child )
  {
    auto const& nd = dst_.nodes()[child];
    if ( nd.kind == maj_netlist::node_kind::inverter )
      return nd.a; // double inversion
    if ( nd.kind == maj_netlist::node_kind::constant )
      return constant( nd.a == 0 );
    canon_key const k{ maj_netlist::node_kind::inverter, child, 0, 0 };
    if ( auto it = strash_.find( k ); it != strash_.end() )
      return it->second;
    return strash_[k] = dst_.add_not( child );
  }

  bool complements( uint32_t x, uint32_t y ) const
  {
    auto const& nx = dst_.nodes()[x];
    auto const& ny = dst_.nodes()[y];
    if ( nx.kind == maj_netlist::node_kind::inverter && nx.a == y )
      return true;
    if ( ny.kind == maj_netlist::node_kind::inverter && ny.a == x )
      return true;
    if ( nx.kind == maj_netlist::node_kind::constant && ny.kind == maj_netlist::node_kind::constant )
      return nx.a != ny.a;
    return false;
  }

  uint32_t majority( uint32_t a, uint32_t b, uint32_t c )
  {
    /* duplicated argument dominates; a complementary pair cancels */
    if ( a == b || a == c )
      return a;
    if ( b == c )
      return b;
    if ( complements( a, b ) )
      return c;
    if ( complements( a, c ) )
      return b;
    if ( complements( b, c ) )
      return a;
    uint32_t arg[3] = { a, b, c };
    std::sort( arg, arg + 3 );
    canon_key const k{ maj_netlist::node_kind::majority, arg[0], arg[1], arg[2] };
    if ( auto it = strash_.find( k ); it != strash_.end() )
      return it->second;
    return strash_[k] = dst_.add_majority( arg[0], arg[1], arg[2] );
  }

  uint32_t copy( uint32_t src_id )
  {
    if ( auto it = mapped_.find( src_id ); it != mapped_.end() )
      return it->second;
    auto const& nd = src_.nodes()[src_id];
    uint32_t id = 0;
    switch ( nd.kind )
    {
    case maj_netlist::node_kind::input:
      id = dst_.get_input( nd.a );
      break;
    case maj_netlist::node_kind::constant:
      id = constant( nd.a != 0 );
      break;
    case maj_netlist::node_kind::inverter:
      id = inverter( copy( nd.a ) );
      break;
    case maj_netlist::node_kind::majority:
    {
      /* fixed evaluation order keeps node ids, and with them the
         canonical argument order, stable across repeated rebuilds */
      uint32_t const ca = copy( nd.a );
      uint32_t const cb = copy( nd.b );
      uint32_t const cc = copy( nd.c );
      id = majority( ca, cb, cc );
      break;
    }
    }
    return mapped_[src_id] = id;
  }

  maj_netlist const& src_;
  maj_netlist dst_;
  std::unordered_map<canon_key, uint32_t, canon_key_hash> strash_;
  std::unordered_map<uint32_t, uint32_t> mapped_;
};

} // namespace

maj_netlist share_subexpressions( maj_netlist const& net )
{
  rebuilder rb( net );
  for ( auto const& [name, id] : net.outputs() )
    rb.dst_.add_output( name, rb.copy( id ) );
  return std::move( rb.dst_ );
}

maj_netlist dualize( maj_netlist const& net )
{
  maj_netlist dst( net.input_names() );
  std::vector<uint32_t> map( net.nodes().size() );
  for ( uint32_t i = 0; i < net.nodes().size(); ++i )
  {
    auto const& nd = net.nodes()[i];
    switch ( nd.kind )
    {
    case maj_netlist::node_kind::input:
      map[i] = dst.add_not( dst.get_input( nd.a ) );
      break;
    case maj_netlist::node_kind::constant:
      map[i] = dst.add_constant( nd.a == 0 );
      break;
    case maj_netlist::node_kind::inverter:
      map[i] = dst.add_not( map[nd.a] );
      break;
    case maj_netlist::node_kind::majority:
      map[i] = dst.add_majority( map[nd.a], map[nd.b], map[nd.c] );
      break;
    }
  }
  for ( auto const& [name, id] : net.outputs() )
    dst.add_output( name, map[id] );
  return dst;
}

double landauer_energy( double temperature_kelvin )
{
  if ( temperature_kelvin < 0.0 )
    throw std::invalid_argument( "landauer_energy: negative temperature" );
  return k_boltzmann * temperature_kelvin * M_LN2;
}

metrics_report metrics( maj_netlist const& net, double temperature_kelvin )
{
  auto const& nodes = net.nodes();

  /* restrict to nodes reachable from outputs */
  std::vector<bool> reachable( nodes.size(), false );
  {
    std::vector<uint32_t> stack;
    for ( auto const& [name, id] : net.outputs() )
      stack.push_back( id );
    while ( !stack.empty() )
    {
      uint32_t const id = stack.back();
      stack.pop_back();
      if ( reachable[id] )
        continue;
      reachable[id] = true;
      auto const& nd = nodes[id];
      if ( nd.kind == maj_netlist::node_kind::inverter )
        stack.push_back( nd.a );
      else if ( nd.kind == maj_netlist::node_kind::majority )
      {
        stack.push_back( nd.a );
        stack.push_back( nd.b );
        stack.push_back( nd.c );
      }
    }
  }

  metrics_report rep;
  std::set<uint32_t> complemented_inputs;
  uint32_t internal_inverters = 0;
  std::vector<uint32_t> depth( nodes.size(), 0 );

  for ( uint32_t i = 0; i < nodes.size(); ++i )
  {
    if ( !reachable[i] )
      continue;
    auto const& nd = nodes[i];
    switch ( nd.kind )
    {
    case maj_netlist::node_kind::input:
    case maj_netlist::node_kind::constant:
      break;
    case maj_netlist::node_kind::inverter:
      depth[i] = depth[nd.a];
      if ( nodes[nd.a].kind == maj_netlist::node_kind::input )
        complemented_inputs.insert( nodes[nd.a].a );
      else
        ++internal_inverters;
      break;
    case maj_netlist::node_kind::majority:
    {
      ++rep.cost.majority_count;
      for ( uint32_t child : { nd.a, nd.b, nd.c } )
      {
        if ( nodes[child].kind == maj_netlist::node_kind::constant )
          ++rep.control_inputs;
      }
      depth[i] = 1 + std::max( { depth[nd.a], depth[nd.b], depth[nd.c] } );
      break;
    }
    }
  }

  for ( auto const& [name, id] : net.outputs() )
  {
    rep.cost.levels = std::max( rep.cost.levels, depth[id] );
    if ( nodes[id].kind == maj_netlist::node_kind::input )
      ++rep.garbage_outputs;
  }

  rep.cost.not_count = static_cast<uint32_t>( complemented_inputs.size() ) + internal_inverters;
  rep.cost.control_inputs = rep.control_inputs;
  rep.constant_inputs = rep.control_inputs;
  rep.clockzone_estimate = rep.cost.levels + 1;
  rep.heat_proxy_joules = rep.control_inputs * landauer_energy( temperature_kelvin );
  return rep;
}

std::string format_metrics( metrics_report const& rep )
{
  std::ostringstream out;
  out << "majority gates   " << rep.cost.majority_count << '\n'
      << "levels           " << rep.cost.levels << '\n'
      << "NOT gates        " << rep.cost.not_count << '\n'
      << "constant inputs  " << rep.constant_inputs << '\n'
      << "garbage outputs  " << rep.garbage_outputs << '\n'
      << "clock zones (est)" << ' ' << rep.clockzone_estimate << '\n';
  char heat[64];
  std::snprintf( heat, sizeof heat, "%.6e", rep.heat_proxy_joules );
  out << "heat proxy [J]   " << heat << '\n';
  out << "majority=" << rep.cost.majority_count << " not=" << rep.cost.not_count
      << " levels=" << rep.cost.levels << " const_in=" << rep.constant_inputs
      << " heat_j=" << heat << '\n';
  return out.str();
}

/* ------------------------------ text format ------------------------------ */

namespace
{

struct netlist_parser
{
  netlist_parser( std::string const& text, std::optional<std::vector<std::string>> const& expected )
  {
    if ( expected )
    {
      strict_inputs_ = true;
      for ( auto const& name : *expected )
        input_ids_[name] = net_.add_input( name );
    }
    std::istringstream in( text );
    std::string raw;
    while ( std::getline( in, raw ) )
    {
      ++line_;
      if ( auto const pos = raw.find( '#' ); pos != std::string::npos )
        raw.erase( pos );
      if ( raw.find_first_not_of( " \t\r" ) == std::string::npos )
        continue;
      parse_statement( raw );
    }
    if ( net_.outputs().empty() )
      throw parse_error( line_, "netlist defines no outputs" );
  }

  void parse_statement( std::string const& stmt )
  {
    pos_ = 0;
    text_ = stmt;
    std::string first = parse_identifier();
    bool is_let = false;
    if ( first == "let" )
    {
      is_let = true;
      first = parse_identifier();
    }
    skip_ws();
    if ( pos_ >= text_.size() || text_[pos_] != '=' )
      throw parse_error( line_, "expected '=' after '" + first + "'" );
    ++pos_;
    uint32_t const id = parse_expr();
    skip_ws();
    if ( pos_ != text_.size() )
      throw parse_error( line_, "trailing characters after expression" );
    if ( is_let )
    {
      if ( lets_.count( first ) || input_ids_.count( first ) )
        throw parse_error( line_, "redefinition of '" + first + "'" );
      lets_[first] = id;
    }
    else
    {
      for ( auto const& [name, node] : net_.outputs() )
      {
        if ( name == first )
          throw parse_error( line_, "output '" + first + "' defined twice" );
      }
      net_.add_output( first, id );
    }
  }

  uint32_t parse_expr()
  {
    skip_ws();
    uint32_t id;
    if ( pos_ < text_.size() && ( text_[pos_] == '0' || text_[pos_] == '1' ) )
    {
      id = constant( text_[pos_] == '1' );
      ++pos_;
    }
    else if ( peek_keyword( "Maj" ) )
    {
      pos_ += 3;
      expect( '(' );
      uint32_t const a = parse_expr();
      expect( ',' );
      uint32_t const b = parse_expr();
      expect( ',' );
      uint32_t const c = parse_expr();
      expect( ')' );
      id = net_.add_majority( a, b, c );
    }
    else
    {
      std::string const name = parse_identifier();
      if ( auto it = lets_.find( name ); it != lets_.end() )
        id = it->second;
      else if ( auto it2 = input_ids_.find( name ); it2 != input_ids_.end() )
        id = it2->second;
      else if ( strict_inputs_ )
        throw parse_error( line_, "unbound input reference '" + name + "'" );
      else
        id = input_ids_[name] = net_.add_input( name );
    }
    /* postfix complement, possibly repeated */
    skip_ws();
    while ( pos_ < text_.size() && text_[pos_] == '\'' )
    {
      id = net_.add_not( id );
      ++pos_;
      skip_ws();
    }
    return id;
  }

  uint32_t constant( bool v )
  {
    auto& slot = const_ids_[v ? 1 : 0];
    if ( !slot )
      slot = net_.add_constant( v ) + 1;
    return *slot - 1;
  }

  bool peek_keyword( std::string const& kw )
  {
    skip_ws();
    if ( text_.compare( pos_, kw.size(), kw ) != 0 )
      return false;
    size_t const after = pos_ + kw.size();
    return after < text_.size() && text_[after] == '(';
  }

  std::string parse_identifier()
  {
    skip_ws();
    size_t const start = pos_;
    while ( pos_ < text_.size() &&
            ( std::isalnum( static_cast<unsigned char>( text_[pos_] ) ) || text_[pos_] == '_' ) )
      ++pos_;
    if ( pos_ == start )
      throw parse_error( line_, "expected identifier" );
    return text_.substr( start, pos_ - start );
  }

  void expect( char c )
  {
    skip_ws();
    if ( pos_ >= text_.size() || text_[pos_] != c )
      throw parse_error( line_, std::string( "expected '" ) + c + "'" );
    ++pos_;
  }

  void skip_ws()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  maj_netlist net_;
  std::unordered_map<std::string, uint32_t> lets_;
  std::unordered_map<std::string, uint32_t> input_ids_;
  std::optional<uint32_t> const_ids_[2];
  bool strict_inputs_{ false };
  std::string text_;
  size_t pos_{ 0 };
  uint32_t line_{ 0 };
};

} // namespace

maj_netlist parse_netlist( std::string const& text,
                           std::optional<std::vector<std::string>> const& expected_inputs )
{
  return std::move( netlist_parser( text, expected_inputs ).net_ );
}

namespace
{

void print_expr( std::ostringstream& out, maj_netlist const& net, uint32_t id,
                 std::unordered_map<uint32_t, std::string> const& let_names )
{
  if ( auto it = let_names.find( id ); it != let_names.end() )
  {
    out << it->second;
    return;
  }
  auto const& nd = net.nodes()[id];
  switch ( nd.kind )
  {
  case maj_netlist::node_kind::input:
    out << net.input_names()[nd.a];
    break;
  case maj_netlist::node_kind::constant:
    out << ( nd.a ? '1' : '0' );
    break;
  case maj_netlist::node_kind::inverter:
    print_expr( out, net, nd.a, let_names );
    out << '\'';
    break;
  case maj_netlist::node_kind::majority:
    out << "Maj(";
    print_expr( out, net, nd.a, let_names );
    out << ",";
    print_expr( out, net, nd.b, let_names );
    out << ",";
    print_expr( out, net, nd.c, let_names );
    out << ")";
    break;
  }
}

} // namespace

std::string emit_netlist( maj_netlist const& net )
{
  auto const& nodes = net.nodes();

  /* fanout among reachable majority nodes decides which get a let binding */
  std::vector<uint32_t> fanout( nodes.size(), 0 );
  std::vector<bool> reachable( nodes.size(), false );
  std::vector<uint32_t> stack;
  for ( auto const& [name, id] : net.outputs() )
  {
    ++fanout[id];
    stack.push_back( id );
  }
  while ( !stack.empty() )
  {
    uint32_t const id = stack.back();
    stack.pop_back();
    if ( reachable[id] )
      continue;
    reachable[id] = true;
    auto const& nd = nodes[id];
    uint32_t children[3] = { nd.a, nd.b, nd.c };
    uint32_t const arity = nd.kind == maj_netlist::node_kind::majority ? 3
                           : nd.kind == maj_netlist::node_kind::inverter ? 1
                                                                         : 0;
    for ( uint32_t k = 0; k < arity; ++k )
    {
      ++fanout[children[k]];
      stack.push_back( children[k] );
    }
  }

  std::unordered_map<uint32_t, std::string> let_names;
  std::ostringstream out;
  uint32_t next_let = 0;
  for ( uint32_t i = 0; i < nodes.size(); ++i )
  {
    if ( !reachable[i] || nodes[i].kind != maj_netlist::node_kind::majority || fanout[i] < 2 )
      continue;
    std::ostringstream expr;
    print_expr( expr, net, i, let_names );
    std::string const name = "t" + std::to_string( next_let++ );
    out << "let " << name << " = " << expr.str() << '\n';
    let_names[i] = name;
  }
  for ( auto const& [name, id] : net.outputs() )
  {
    out << name << " = ";
    print_expr( out, net, id, let_names );
    out << '\n';
  }
  return out.str();
}

namespace
{

std::string canon_expr( maj_netlist const& net, uint32_t id )
{
  auto const& nd = net.nodes()[id];
  switch ( nd.kind )
  {
  case maj_netlist::node_kind::input:
    return net.input_names()[nd.a];
  case maj_netlist::node_kind::constant:
    return nd.a ? "1" : "0";
  case maj_netlist::node_kind::inverter:
    return canon_expr( net, nd.a ) + "'";
  case maj_netlist::node_kind::majority:
  {
    std::string args[3] = { canon_expr( net, nd.a ), canon_expr( net, nd.b ), canon_expr( net, nd.c ) };
    std::sort( args, args + 3 );
    return "Maj(" + args[0] + "," + args[1] + "," + args[2] + ")";
  }
  }
  return {};
}

} // namespace

std::string node_to_string( maj_netlist const& net, uint32_t node_id )
{
  return canon_expr( net, node_id );
}

} // namespace revmaj
