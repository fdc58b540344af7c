#include "revmaj/truth_table.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace revmaj
{

bitvec input_column( uint32_t num_inputs, uint32_t input_index )
{
  uint32_t const rows = 1u << num_inputs;
  bitvec col( rows );
  uint32_t const shift = num_inputs - 1u - input_index;
  for ( uint32_t r = 0; r < rows; ++r )
  {
    if ( ( r >> shift ) & 1u )
      col.set( r, true );
  }
  return col;
}

bitvec constant_column( uint32_t num_inputs, bool value )
{
  return bitvec( 1u << num_inputs, value );
}

uint32_t similarity( bitvec const& target, bitvec const& candidate )
{
  if ( target.size() != candidate.size() )
    throw std::invalid_argument( "similarity: column length mismatch" );
  return bitvec::agreements( target, candidate );
}

namespace
{

struct line_token
{
  uint32_t number;
  std::string text;
};

std::vector<line_token> content_lines( std::string const& text )
{
  std::vector<line_token> lines;
  std::istringstream in( text );
  std::string raw;
  uint32_t number = 0;
  while ( std::getline( in, raw ) )
  {
    ++number;
    if ( auto const pos = raw.find( '#' ); pos != std::string::npos )
      raw.erase( pos );
    /* trim */
    auto const b = raw.find_first_not_of( " \t\r" );
    if ( b == std::string::npos )
      continue;
    auto const e = raw.find_last_not_of( " \t\r" );
    lines.push_back( { number, raw.substr( b, e - b + 1 ) } );
  }
  return lines;
}

std::vector<std::string> split_ws( std::string const& s )
{
  std::vector<std::string> out;
  std::istringstream in( s );
  std::string tok;
  while ( in >> tok )
    out.push_back( tok );
  return out;
}

bool valid_identifier( std::string const& s )
{
  if ( s.empty() || ( !std::isalpha( static_cast<unsigned char>( s[0] ) ) && s[0] != '_' ) )
    return false;
  return std::all_of( s.begin(), s.end(), []( char c ) {
    return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_';
  } );
}

void check_names( std::vector<std::string> const& names, uint32_t line )
{
  std::unordered_set<std::string> seen;
  for ( auto const& n : names )
  {
    if ( !valid_identifier( n ) )
      throw parse_error( line, "invalid identifier '" + n + "'" );
    if ( !seen.insert( n ).second )
      throw parse_error( line, "duplicate name '" + n + "'" );
  }
}

bitvec column_from_hex( std::string const& hex, uint32_t rows, uint32_t line )
{
  bitvec col( rows );
  /* hex digit k from the end covers rows 4k..4k+3 */
  for ( size_t i = 0; i < hex.size(); ++i )
  {
    char const c = hex[hex.size() - 1 - i];
    uint32_t nibble;
    if ( c >= '0' && c <= '9' )
      nibble = c - '0';
    else if ( c >= 'a' && c <= 'f' )
      nibble = 10 + ( c - 'a' );
    else if ( c >= 'A' && c <= 'F' )
      nibble = 10 + ( c - 'A' );
    else
      throw parse_error( line, std::string( "invalid hex digit '" ) + c + "'" );
    for ( uint32_t b = 0; b < 4; ++b )
    {
      if ( !( ( nibble >> b ) & 1u ) )
        continue;
      uint32_t const row = static_cast<uint32_t>( 4 * i + b );
      if ( row >= rows )
        throw parse_error( line, "hex literal does not fit in " + std::to_string( rows ) + " rows" );
      col.set( row, true );
    }
  }
  return col;
}

} // namespace

truth_table parse_truth_table( std::string const& text )
{
  auto const lines = content_lines( text );
  if ( lines.empty() )
    throw parse_error( 1, "empty truth-table file" );

  truth_table table;

  /* inputs line */
  {
    auto toks = split_ws( lines[0].text );
    if ( toks.empty() || toks[0] != "inputs" )
      throw parse_error( lines[0].number, "expected 'inputs <name> ...'" );
    toks.erase( toks.begin() );
    if ( toks.empty() )
      throw parse_error( lines[0].number, "at least one input required" );
    if ( toks.size() > max_inputs )
      throw parse_error( lines[0].number, "more than " + std::to_string( max_inputs ) + " inputs" );
    check_names( toks, lines[0].number );
    table.input_names = toks;
  }

  uint32_t const n = table.num_inputs();
  uint32_t const rows = 1u << n;

  if ( lines.size() < 2 )
    throw parse_error( lines[0].number, "missing outputs or compact line" );

  /* compact form: <name>=0x<hex> */
  if ( auto const eq = lines[1].text.find( '=' ); eq != std::string::npos && split_ws( lines[1].text )[0] != "outputs" )
  {
    if ( lines.size() > 2 )
      throw parse_error( lines[2].number, "unexpected content after compact definition" );
    std::string name = lines[1].text.substr( 0, eq );
    std::string value = lines[1].text.substr( eq + 1 );
    name.erase( std::remove_if( name.begin(), name.end(), ::isspace ), name.end() );
    value.erase( std::remove_if( value.begin(), value.end(), ::isspace ), value.end() );
    if ( !valid_identifier( name ) )
      throw parse_error( lines[1].number, "invalid output name '" + name + "'" );
    if ( value.rfind( "0x", 0 ) != 0 && value.rfind( "0X", 0 ) != 0 )
      throw parse_error( lines[1].number, "compact form requires a 0x hex literal" );
    for ( auto const& in : table.input_names )
    {
      if ( in == name )
        throw parse_error( lines[1].number, "duplicate name '" + name + "'" );
    }
    table.output_names = { name };
    table.columns = { column_from_hex( value.substr( 2 ), rows, lines[1].number ) };
    return table;
  }

  /* outputs line */
  {
    auto toks = split_ws( lines[1].text );
    if ( toks.empty() || toks[0] != "outputs" )
      throw parse_error( lines[1].number, "expected 'outputs <name> ...'" );
    toks.erase( toks.begin() );
    if ( toks.empty() )
      throw parse_error( lines[1].number, "at least one output required" );
    check_names( toks, lines[1].number );
    for ( auto const& o : toks )
    {
      if ( std::find( table.input_names.begin(), table.input_names.end(), o ) != table.input_names.end() )
        throw parse_error( lines[1].number, "duplicate name '" + o + "'" );
    }
    table.output_names = toks;
  }

  uint32_t const m = table.num_outputs();
  table.columns.assign( m, bitvec( rows ) );

  if ( lines.size() - 2 != rows )
    throw parse_error( lines.back().number,
                       "expected " + std::to_string( rows ) + " body rows, found " +
                           std::to_string( lines.size() - 2 ) );

  std::vector<bool> seen( rows, false );
  for ( size_t li = 2; li < lines.size(); ++li )
  {
    auto const& ln = lines[li];
    std::string digits;
    for ( char c : ln.text )
    {
      if ( c == '0' || c == '1' )
        digits.push_back( c );
      else if ( !std::isspace( static_cast<unsigned char>( c ) ) )
        throw parse_error( ln.number, std::string( "unexpected character '" ) + c + "' in row" );
    }
    if ( digits.size() != n + m )
      throw parse_error( ln.number, "row must have " + std::to_string( n ) + " input bits and " +
                                        std::to_string( m ) + " output bits" );
    uint32_t row = 0;
    for ( uint32_t i = 0; i < n; ++i )
      row = ( row << 1 ) | ( digits[i] == '1' ? 1u : 0u );
    if ( seen[row] )
      throw parse_error( ln.number, "duplicate row for input assignment " + digits.substr( 0, n ) );
    seen[row] = true;
    for ( uint32_t j = 0; j < m; ++j )
      table.columns[j].set( row, digits[n + j] == '1' );
  }

  return table;
}

std::string emit_truth_table( truth_table const& table )
{
  std::ostringstream out;
  out << "inputs";
  for ( auto const& n : table.input_names )
    out << ' ' << n;
  out << "\noutputs";
  for ( auto const& n : table.output_names )
    out << ' ' << n;
  out << '\n';
  uint32_t const n = table.num_inputs();
  for ( uint32_t r = 0; r < table.num_rows(); ++r )
  {
    for ( uint32_t i = 0; i < n; ++i )
      out << ( ( r >> ( n - 1 - i ) ) & 1u );
    out << ' ';
    for ( auto const& col : table.columns )
      out << col.get( r );
    out << '\n';
  }
  return out.str();
}

bool is_injective( truth_table const& table )
{
  std::unordered_set<uint32_t> seen;
  uint32_t const m = table.num_outputs();
  if ( m > 32 )
    throw std::invalid_argument( "is_injective: more than 32 outputs" );
  for ( uint32_t r = 0; r < table.num_rows(); ++r )
  {
    uint32_t tuple = 0;
    for ( uint32_t j = 0; j < m; ++j )
      tuple = ( tuple << 1 ) | ( table.columns[j].get( r ) ? 1u : 0u );
    if ( !seen.insert( tuple ).second )
      return false;
  }
  return true;
}

bool is_bijective( truth_table const& table )
{
  return table.num_outputs() == table.num_inputs() && is_injective( table );
}

std::vector<pass_through_match> pass_through_outputs( truth_table const& table )
{
  std::vector<pass_through_match> matches;
  uint32_t const n = table.num_inputs();
  for ( uint32_t j = 0; j < table.num_outputs(); ++j )
  {
    bool found = false;
    for ( uint32_t i = 0; i < n && !found; ++i )
    {
      auto const in = input_column( n, i );
      if ( table.columns[j] == in )
      {
        matches.push_back( { j, i, false } );
        found = true;
      }
      else if ( table.columns[j] == ~in )
      {
        matches.push_back( { j, i, true } );
        found = true;
      }
    }
  }
  return matches;
}

} // namespace revmaj
