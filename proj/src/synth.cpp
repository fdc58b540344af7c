#include "revmaj/synth.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace revmaj
{

namespace
{

/* ------------------------------------------------------------------ */
/* Expression arena: hash-consed majority/NOT fragments over literals. */
/* ------------------------------------------------------------------ */

enum class akind : uint8_t
{
  lit, // a = input index, b = complemented
  cst, // a = value
  mjy, // a,b,c = children, sorted
  inv  // a = child (always a majority node after reductions)
};

struct anode
{
  akind kind;
  uint32_t a, b, c;

  bool operator==( anode const& o ) const
  {
    return kind == o.kind && a == o.a && b == o.b && c == o.c;
  }
};

struct anode_hash
{
  size_t operator()( anode const& n ) const
  {
    size_t h = static_cast<size_t>( n.kind );
    h = h * 0x9e3779b97f4a7c15ull + n.a;
    h = h * 0x9e3779b97f4a7c15ull + n.b;
    h = h * 0x9e3779b97f4a7c15ull + n.c;
    return h;
  }
};

class arena
{
public:
  arena( std::vector<std::string> names ) : names_( std::move( names ) )
  {
    n_ = static_cast<uint32_t>( names_.size() );
    rows_ = 1u << n_;
  }

  uint32_t num_inputs() const { return n_; }
  uint32_t rows() const { return rows_; }
  std::vector<std::string> const& names() const { return names_; }

  uint32_t lit( uint32_t index, bool compl_ )
  {
    return intern( { akind::lit, index, compl_ ? 1u : 0u, 0 } );
  }

  uint32_t cst( bool value ) { return intern( { akind::cst, value ? 1u : 0u, 0, 0 } ); }

  uint32_t inv( uint32_t x )
  {
    auto const& nd = nodes_[x];
    switch ( nd.kind )
    {
    case akind::lit:
      return lit( nd.a, nd.b == 0 );
    case akind::cst:
      return cst( nd.a == 0 );
    case akind::inv:
      return nd.a;
    case akind::mjy:
      return intern( { akind::inv, x, 0, 0 } );
    }
    return x;
  }

  bool complements( uint32_t x, uint32_t y ) const
  {
    auto const& nx = nodes_[x];
    auto const& ny = nodes_[y];
    if ( nx.kind == akind::lit && ny.kind == akind::lit )
      return nx.a == ny.a && nx.b != ny.b;
    if ( nx.kind == akind::cst && ny.kind == akind::cst )
      return nx.a != ny.a;
    if ( nx.kind == akind::inv && nx.a == y )
      return true;
    if ( ny.kind == akind::inv && ny.a == x )
      return true;
    return false;
  }

  /* majority with degeneracy reductions; may return an argument */
  uint32_t maj( uint32_t a, uint32_t b, uint32_t c )
  {
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
    return intern( { akind::mjy, arg[0], arg[1], arg[2] } );
  }

  anode const& node( uint32_t id ) const { return nodes_[id]; }
  bitvec const& column( uint32_t id ) const { return cols_[id]; }
  uint32_t depth( uint32_t id ) const { return depth_[id]; }
  std::vector<uint32_t> const& cone( uint32_t id ) const { return cone_[id]; }
  size_t size() const { return nodes_.size(); }

  std::string const& canon_string( uint32_t id )
  {
    auto& s = canon_[id];
    if ( !s.empty() )
      return s;
    auto const& nd = nodes_[id];
    switch ( nd.kind )
    {
    case akind::lit:
      s = names_[nd.a] + ( nd.b ? "'" : "" );
      break;
    case akind::cst:
      s = nd.a ? "1" : "0";
      break;
    case akind::inv:
      s = canon_string( nd.a ) + "'";
      break;
    case akind::mjy:
    {
      std::string args[3] = { canon_string( nd.a ), canon_string( nd.b ), canon_string( nd.c ) };
      std::sort( args, args + 3 );
      s = "Maj(" + args[0] + "," + args[1] + "," + args[2] + ")";
      break;
    }
    }
    return s;
  }

  /* cost of the roots' combined cone; nodes in `paid` count as built */
  cost_vector cone_cost( std::initializer_list<uint32_t> roots,
                         std::unordered_set<uint32_t> const& paid ) const
  {
    cost_vector cv;
    std::unordered_set<uint32_t> seen;
    for ( uint32_t root : roots )
    {
      cv.levels = std::max( cv.levels, depth_[root] );
      for ( uint32_t id : cone_[root] )
      {
        if ( paid.count( id ) || !seen.insert( id ).second )
          continue;
        add_node_cost( cv, id );
      }
    }
    return cv;
  }

  uint32_t incr_majority( uint32_t root, std::unordered_set<uint32_t> const& paid ) const
  {
    uint32_t m = 0;
    for ( uint32_t id : cone_[root] )
    {
      if ( nodes_[id].kind == akind::mjy && !paid.count( id ) )
        ++m;
    }
    return m;
  }

private:
  void add_node_cost( cost_vector& cv, uint32_t id ) const
  {
    auto const& nd = nodes_[id];
    switch ( nd.kind )
    {
    case akind::lit:
      if ( nd.b )
        ++cv.not_count;
      break;
    case akind::cst:
      break;
    case akind::inv:
      ++cv.not_count;
      break;
    case akind::mjy:
      ++cv.majority_count;
      for ( uint32_t child : { nd.a, nd.b, nd.c } )
      {
        if ( nodes_[child].kind == akind::cst )
          ++cv.control_inputs;
      }
      break;
    }
  }

  uint32_t intern( anode nd )
  {
    if ( auto it = strash_.find( nd ); it != strash_.end() )
      return it->second;
    uint32_t const id = static_cast<uint32_t>( nodes_.size() );
    nodes_.push_back( nd );
    canon_.emplace_back();
    switch ( nd.kind )
    {
    case akind::lit:
    {
      auto col = input_column( n_, nd.a );
      cols_.push_back( nd.b ? ~col : col );
      depth_.push_back( 0 );
      cone_.push_back( { id } );
      break;
    }
    case akind::cst:
      cols_.push_back( bitvec( rows_, nd.a != 0 ) );
      depth_.push_back( 0 );
      cone_.push_back( { id } );
      break;
    case akind::inv:
      cols_.push_back( ~cols_[nd.a] );
      depth_.push_back( depth_[nd.a] );
      cone_.push_back( merged_cone( id, { nd.a } ) );
      break;
    case akind::mjy:
      cols_.push_back( bitvec::majority( cols_[nd.a], cols_[nd.b], cols_[nd.c] ) );
      depth_.push_back( 1 + std::max( { depth_[nd.a], depth_[nd.b], depth_[nd.c] } ) );
      cone_.push_back( merged_cone( id, { nd.a, nd.b, nd.c } ) );
      break;
    }
    strash_[nd] = id;
    return id;
  }

  std::vector<uint32_t> merged_cone( uint32_t self, std::initializer_list<uint32_t> children )
  {
    std::vector<uint32_t> out{ self };
    for ( uint32_t c : children )
      out.insert( out.end(), cone_[c].begin(), cone_[c].end() );
    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    return out;
  }

  uint32_t n_, rows_;
  std::vector<std::string> names_;
  std::vector<anode> nodes_;
  std::vector<bitvec> cols_;
  std::vector<uint32_t> depth_;
  std::vector<std::vector<uint32_t>> cone_;
  std::vector<std::string> canon_;
  std::unordered_map<anode, uint32_t, anode_hash> strash_;
};

/* ------------------------------------------------------------------ */
/* Search engine                                                       */
/* ------------------------------------------------------------------ */

struct memo_key
{
  bitvec care;
  bitvec values;
  uint32_t depth;
  uint64_t extra_hash;

  bool operator==( memo_key const& o ) const
  {
    return depth == o.depth && extra_hash == o.extra_hash && care == o.care && values == o.values;
  }
};

struct memo_key_hash
{
  size_t operator()( memo_key const& k ) const
  {
    return k.care.hash() * 3 + k.values.hash() * 7 + k.depth + k.extra_hash;
  }
};

class engine
{
public:
  engine( std::vector<std::string> const& input_names, synth_config const& cfg )
      : a_( input_names ), cfg_( cfg )
  {
    build_simple_terms();
  }

  arena& ar() { return a_; }

  /*! minimal-cost candidates whose column matches `values` on `care` rows */
  std::vector<uint32_t> solve( bitvec const& care, bitvec const& values, uint32_t depth,
                               std::vector<uint32_t> const& extra )
  {
    bitvec const v = values & care;
    if ( care.all_zero() )
      return { a_.cst( false ) };

    memo_key const key{ care, v, depth, hash_ids( extra ) };
    if ( auto it = memo_.find( key ); it != memo_.end() )
      return it->second;

    /* within-output shareables are free for the ranking; nodes from other
       outputs are not, so every output lands on its standalone optimum */
    std::unordered_set<uint32_t> paid;
    for ( uint32_t x : extra )
    {
      for ( uint32_t id : a_.cone( x ) )
        paid.insert( id );
    }

    std::unordered_set<uint32_t> cand;
    auto matches = [&]( uint32_t id ) {
      return bitvec::equal_under_mask( a_.column( id ), v, care );
    };
    auto consider = [&]( uint32_t id ) {
      if ( matches( id ) )
        cand.insert( id );
    };

    /* terminal scan: leaves, shareable extras, one-gate terms */
    for ( uint32_t id : leaves_ )
      consider( id );
    for ( uint32_t x : extra )
    {
      consider( x );
      consider( a_.inv( x ) );
    }
    if ( depth >= 1 )
    {
      for ( auto const& [col, id] : simple_terms_ )
      {
        if ( bitvec::equal_under_mask( col, v, care ) )
          cand.insert( id );
      }
      for ( uint32_t x : extra )
      {
        for ( uint32_t id : one_step_over( x ) )
          consider( id );
      }
    }

    uint32_t best_maj = best_majority_of( cand, paid );

    /* exhaustive depth-2 triples on complete targets */
    bool triple_ran = false;
    if ( depth >= 2 && care.count_ones() == a_.rows() && a_.num_inputs() <= 4 &&
         ( cand.empty() || best_maj >= 2 ) )
    {
      triple_ran = true;
      auto const& terms = simple_terms_;
      for ( size_t i = 0; i < terms.size(); ++i )
      {
        for ( size_t j = i + 1; j < terms.size(); ++j )
        {
          for ( size_t k = j + 1; k < terms.size(); ++k )
          {
            bitvec const col = bitvec::majority( terms[i].first, terms[j].first, terms[k].first );
            if ( !bitvec::equal_under_mask( col, v, care ) )
              continue;
            consider( a_.maj( terms[i].second, terms[j].second, terms[k].second ) );
          }
        }
      }
      best_maj = best_majority_of( cand, paid );
    }

    /* decomposition around a base literal; skipped when the terminal and
       triple stages already cover everything a decomposition could beat */
    bool const flow_useless =
        ( !cand.empty() && best_maj <= 1 ) || ( triple_ran && !cand.empty() && best_maj <= 2 );
    if ( depth >= 1 && !flow_useless )
    {
      auto const bases = ranked_bases( v, care );
      uint32_t const va_cap = depth >= cfg_.max_depth ? 64 : 24;
      for ( auto const& base : bases )
      {
        uint32_t const f1 =
            base.constant_base ? a_.cst( base.constant_value ) : a_.lit( base.input_index, base.complemented );
        bitvec const mismatch = care & ( a_.column( f1 ) ^ v );
        bitvec const joint = care & ~mismatch;
        auto const va_list = solve( mismatch, v, depth - 1, extra );
        uint32_t taken_va = 0;
        for ( uint32_t va : va_list )
        {
          if ( best_maj != no_best && a_.incr_majority( va, paid ) + 1 > best_maj )
            break; // candidates are cost-ordered
          if ( ++taken_va > va_cap )
            break;
          bitvec const cover = joint & ~( a_.column( va ) ^ v );
          if ( !joint.all_zero() && cover.all_zero() )
            continue;
          bitvec const care_b = mismatch | ( joint & ( a_.column( va ) ^ v ) );
          auto extra_b = extra;
          extra_b.push_back( va );
          auto const vb_list = solve( care_b, v, depth - 1, extra_b );
          uint32_t taken_vb = 0;
          for ( uint32_t vb : vb_list )
          {
            if ( ++taken_vb > pair_width )
              break;
            consider( a_.maj( f1, va, vb ) );
          }
        }
        best_maj = best_majority_of( cand, paid );
      }
    }

    auto result = rank_and_trim( cand, paid, depth );
    memo_[key] = result;
    return result;
  }

  std::vector<base_candidate> ranked_bases( bitvec const& values, bitvec const& care )
  {
    std::vector<base_candidate> all;
    for ( uint32_t i = 0; i < a_.num_inputs(); ++i )
    {
      for ( bool compl_ : { false, true } )
      {
        bitvec const col = a_.column( a_.lit( i, compl_ ) );
        uint32_t const score = ( ~( col ^ values ) & care ).count_ones();
        all.push_back( { i, compl_, false, false, score } );
      }
    }
    if ( cfg_.allow_constant_base )
    {
      for ( bool val : { false, true } )
      {
        bitvec const col( care.size(), val );
        uint32_t const score = ( ~( col ^ values ) & care ).count_ones();
        all.push_back( { 0, false, true, val, score } );
      }
    }
    std::stable_sort( all.begin(), all.end(), []( base_candidate const& x, base_candidate const& y ) {
      if ( x.score != y.score )
        return x.score > y.score;
      if ( x.complemented != y.complemented )
        return !x.complemented;
      return x.input_index > y.input_index;
    } );
    if ( all.empty() )
      return all;
    if ( !cfg_.explore_ties )
      return { all.front() };
    uint32_t const top = all.front().score;
    std::vector<base_candidate> tied;
    for ( auto const& b : all )
    {
      if ( b.score == top )
        tied.push_back( b );
    }
    return tied;
  }

  /* final-selection comparison: standalone cost, then canonical text.
     Fan-out across outputs is not rewarded here; identical structure still
     merges, which is exactly the sharing the printed circuits show. */
  bool better( uint32_t x, uint32_t y )
  {
    std::unordered_set<uint32_t> const nothing;
    auto const sx = a_.cone_cost( { x }, nothing );
    auto const sy = a_.cone_cost( { y }, nothing );
    if ( sx != sy )
      return sx < sy;
    return a_.canon_string( x ) < a_.canon_string( y );
  }

private:
  static constexpr uint32_t no_best = 0xffffffffu;
  static constexpr uint32_t pair_width = 8; //!< completions tried per left side

  uint32_t best_majority_of( std::unordered_set<uint32_t> const& cand,
                             std::unordered_set<uint32_t> const& paid ) const
  {
    uint32_t best = no_best;
    for ( uint32_t id : cand )
      best = std::min( best, a_.incr_majority( id, paid ) );
    return best;
  }

  static uint64_t hash_ids( std::vector<uint32_t> const& ids )
  {
    std::vector<uint32_t> sorted = ids;
    std::sort( sorted.begin(), sorted.end() );
    sorted.erase( std::unique( sorted.begin(), sorted.end() ), sorted.end() );
    uint64_t h = 0x243f6a8885a308d3ull;
    for ( uint32_t id : sorted )
      h = h * 0x100000001b3ull + id;
    return h;
  }

  void build_simple_terms()
  {
    uint32_t const n = a_.num_inputs();
    leaves_.clear();
    for ( uint32_t i = 0; i < n; ++i )
    {
      leaves_.push_back( a_.lit( i, false ) );
      leaves_.push_back( a_.lit( i, true ) );
    }
    leaves_.push_back( a_.cst( false ) );
    leaves_.push_back( a_.cst( true ) );

    /* one gate over leaves; keep the two cheapest shapes per column */
    std::map<bitvec, std::vector<uint32_t>> by_column;
    auto consider = [&]( uint32_t id ) {
      if ( a_.node( id ).kind != akind::mjy && a_.node( id ).kind != akind::inv )
        return; // collapsed to a leaf; leaves are scanned separately
      auto& reps = by_column[a_.column( id )];
      if ( std::find( reps.begin(), reps.end(), id ) == reps.end() )
        reps.push_back( id );
    };
    for ( size_t i = 0; i < leaves_.size(); ++i )
    {
      for ( size_t j = i + 1; j < leaves_.size(); ++j )
      {
        for ( size_t k = j + 1; k < leaves_.size(); ++k )
        {
          uint32_t const id = a_.maj( leaves_[i], leaves_[j], leaves_[k] );
          consider( id );
          consider( a_.inv( id ) );
        }
      }
    }
    simple_terms_.clear();
    for ( auto& [col, reps] : by_column )
    {
      std::sort( reps.begin(), reps.end(), [&]( uint32_t x, uint32_t y ) {
        return better( x, y );
      } );
      simple_terms_.emplace_back( col, reps[0] );
      if ( reps.size() > 1 )
        simple_terms_.emplace_back( col, reps[1] );
    }
  }

  /* new single-gate terms combining one shareable node with leaves */
  std::vector<uint32_t> const& one_step_over( uint32_t x )
  {
    if ( auto it = one_step_cache_.find( x ); it != one_step_cache_.end() )
      return it->second;
    std::vector<uint32_t> out;
    if ( a_.node( x ).kind == akind::mjy || a_.node( x ).kind == akind::inv )
    {
      for ( size_t i = 0; i < leaves_.size(); ++i )
      {
        for ( size_t j = i + 1; j < leaves_.size(); ++j )
        {
          uint32_t const id = a_.maj( x, leaves_[i], leaves_[j] );
          if ( a_.node( id ).kind == akind::mjy )
          {
            out.push_back( id );
            out.push_back( a_.inv( id ) );
          }
        }
      }
    }
    return one_step_cache_[x] = std::move( out );
  }

  std::vector<uint32_t> rank_and_trim( std::unordered_set<uint32_t> const& cand,
                                       std::unordered_set<uint32_t> const& paid, uint32_t depth )
  {
    std::vector<std::pair<cost_vector, uint32_t>> ranked;
    ranked.reserve( cand.size() );
    for ( uint32_t id : cand )
      ranked.emplace_back( a_.cone_cost( { id }, paid ), id );
    std::sort( ranked.begin(), ranked.end(), [&]( auto const& x, auto const& y ) {
      if ( x.first != y.first )
        return x.first < y.first;
      return a_.canon_string( x.second ) < a_.canon_string( y.second );
    } );

    uint32_t const beam = depth >= cfg_.max_depth ? 128 : 32;
    std::vector<uint32_t> out;
    if ( !ranked.empty() )
    {
      uint32_t const min_maj = ranked.front().first.majority_count;
      for ( auto const& [cost, id] : ranked )
      {
        if ( cost.majority_count > min_maj + 2 || out.size() >= beam )
          break;
        out.push_back( id );
      }
    }
    return out;
  }

  arena a_;
  synth_config cfg_;
  std::vector<uint32_t> leaves_;
  std::vector<std::pair<bitvec, uint32_t>> simple_terms_;
  std::unordered_map<uint32_t, std::vector<uint32_t>> one_step_cache_;
  std::unordered_map<memo_key, std::vector<uint32_t>, memo_key_hash> memo_;
};

/* converts an arena cone into a standalone netlist */
void emit_cone( arena const& a, uint32_t root, maj_netlist& net,
                std::unordered_map<uint32_t, uint32_t>& mapped )
{
  if ( mapped.count( root ) )
    return;
  auto const& nd = a.node( root );
  uint32_t id = 0;
  switch ( nd.kind )
  {
  case akind::lit:
    id = nd.b ? net.add_not( net.get_input( nd.a ) ) : net.get_input( nd.a );
    break;
  case akind::cst:
    id = net.add_constant( nd.a != 0 );
    break;
  case akind::inv:
    emit_cone( a, nd.a, net, mapped );
    id = net.add_not( mapped[nd.a] );
    break;
  case akind::mjy:
    emit_cone( a, nd.a, net, mapped );
    emit_cone( a, nd.b, net, mapped );
    emit_cone( a, nd.c, net, mapped );
    id = net.add_majority( mapped[nd.a], mapped[nd.b], mapped[nd.c] );
    break;
  }
  mapped[root] = id;
}

maj_netlist cone_to_netlist( arena const& a, std::vector<std::string> const& input_names,
                             std::vector<std::pair<std::string, uint32_t>> const& roots )
{
  maj_netlist net( input_names );
  std::unordered_map<uint32_t, uint32_t> mapped;
  for ( auto const& [name, root] : roots )
  {
    emit_cone( a, root, net, mapped );
    net.add_output( name, mapped[root] );
  }
  return share_subexpressions( net );
}

} // namespace

/* ------------------------------------------------------------------ */
/* Public operations                                                   */
/* ------------------------------------------------------------------ */

std::vector<base_candidate> select_base_columns( bitvec const& target,
                                                 std::vector<bitvec> const& inputs,
                                                 synth_config const& cfg )
{
  if ( inputs.empty() )
    throw std::invalid_argument( "select_base_columns: empty input list" );
  std::vector<base_candidate> all;
  for ( uint32_t i = 0; i < inputs.size(); ++i )
  {
    for ( bool compl_ : { false, true } )
    {
      bitvec const col = compl_ ? ~inputs[i] : inputs[i];
      all.push_back( { i, compl_, false, false, similarity( target, col ) } );
    }
  }
  if ( cfg.allow_constant_base )
  {
    for ( bool val : { false, true } )
      all.push_back( { 0, false, true, val, similarity( target, bitvec( target.size(), val ) ) } );
  }
  std::stable_sort( all.begin(), all.end(), []( base_candidate const& x, base_candidate const& y ) {
    if ( x.score != y.score )
      return x.score > y.score;
    if ( x.complemented != y.complemented )
      return !x.complemented;
    return x.input_index > y.input_index;
  } );
  if ( !cfg.explore_ties )
    return { all.front() };
  uint32_t const top = all.front().score;
  std::vector<base_candidate> tied;
  for ( auto const& b : all )
  {
    if ( b.score == top )
      tied.push_back( b );
  }
  return tied;
}

decomposition derive_constraints( bitvec const& target, column const& f1 )
{
  if ( target.size() != f1.bits.size() )
    throw std::invalid_argument( "derive_constraints: column length mismatch" );
  decomposition dec;
  dec.f1 = f1;
  bitvec const mismatch = target ^ f1.bits;
  dec.joint_rows = ~mismatch;
  dec.f2_constraint = { mismatch, target & mismatch, target };
  dec.f3_constraint = dec.f2_constraint;
  return dec;
}

std::vector<candidate_term> candidate_terms( std::vector<std::string> const& input_names )
{
  arena a( input_names );
  uint32_t const n = a.num_inputs();
  std::vector<uint32_t> leaves;
  for ( uint32_t i = 0; i < n; ++i )
  {
    leaves.push_back( a.lit( i, false ) );
    leaves.push_back( a.lit( i, true ) );
  }
  leaves.push_back( a.cst( false ) );
  leaves.push_back( a.cst( true ) );

  std::unordered_set<uint32_t> const nothing;
  std::map<bitvec, uint32_t> best;
  auto consider = [&]( uint32_t id ) {
    auto it = best.find( a.column( id ) );
    if ( it == best.end() )
    {
      best[a.column( id )] = id;
      return;
    }
    auto const cx = a.cone_cost( { id }, nothing );
    auto const cy = a.cone_cost( { it->second }, nothing );
    if ( cx < cy || ( cx == cy && a.canon_string( id ) < a.canon_string( it->second ) ) )
      it->second = id;
  };
  for ( uint32_t id : leaves )
    consider( id );
  for ( size_t i = 0; i < leaves.size(); ++i )
  {
    for ( size_t j = i + 1; j < leaves.size(); ++j )
    {
      for ( size_t k = j + 1; k < leaves.size(); ++k )
        consider( a.maj( leaves[i], leaves[j], leaves[k] ) );
    }
  }
  std::vector<candidate_term> out;
  for ( auto& [col, id] : best )
    out.push_back( { a.canon_string( id ), col } );
  return out;
}

std::optional<pair_completion> complete_pair( decomposition const& dec,
                                              std::vector<std::string> const& input_names,
                                              synth_config const& cfg, uint32_t depth )
{
  if ( depth > cfg.max_depth )
    throw std::invalid_argument( "complete_pair: depth exceeds budget" );
  engine eng( input_names, cfg );
  auto& a = eng.ar();

  uint32_t const budget = cfg.max_depth - depth;
  if ( budget == 0 )
    return std::nullopt;

  bitvec const& forced = dec.f2_constraint.care;
  bitvec const& target = dec.f2_constraint.target;
  bitvec const joint = dec.joint_rows;
  std::unordered_set<uint32_t> const nothing;

  struct pair_cand
  {
    uint32_t va, vb;
    cost_vector cost;
    std::string key;
  };
  std::optional<pair_cand> best;

  auto const va_list = eng.solve( forced, target & forced, budget - 1, {} );
  for ( uint32_t va : va_list )
  {
    bitvec const cover = joint & ~( a.column( va ) ^ target );
    if ( !joint.all_zero() && cover.all_zero() )
      continue;
    bitvec const care_b = forced | ( joint & ( a.column( va ) ^ target ) );
    auto const vb_list = eng.solve( care_b, target & care_b, budget - 1, { va } );
    for ( size_t t = 0; t < vb_list.size() && t < 8; ++t )
    {
      uint32_t const vb = vb_list[t];
      auto const cost = a.cone_cost( { va, vb }, nothing );
      std::string key = a.canon_string( va ) + "|" + a.canon_string( vb );
      if ( !best || cost < best->cost || ( cost == best->cost && key < best->key ) )
        best = pair_cand{ va, vb, cost, std::move( key ) };
    }
  }
  if ( !best )
    return std::nullopt;

  /* deterministic presentation: the OR-flavoured side is printed as F2,
     matching the worked examples */
  uint32_t f2 = best->va, f3 = best->vb;
  if ( a.canon_string( f2 ) < a.canon_string( f3 ) )
    std::swap( f2, f3 );

  pair_completion out;
  out.f2 = cone_to_netlist( a, input_names, { { "F2", f2 } } );
  out.f3 = cone_to_netlist( a, input_names, { { "F3", f3 } } );
  out.cost = best->cost;
  return out;
}

synth_result synthesize_column( bitvec const& target, std::vector<std::string> const& input_names,
                                synth_config const& cfg, std::string const& output_name )
{
  engine eng( input_names, cfg );
  bitvec const care( target.size(), true );
  auto const roots = eng.solve( care, target, cfg.max_depth, {} );
  if ( roots.empty() )
    throw synthesis_error( "no completion within depth budget " + std::to_string( cfg.max_depth ) +
                           " for target " + target.to_string() );
  auto net = cone_to_netlist( eng.ar(), input_names, { { output_name, roots.front() } } );
  return { net, metrics( net ).cost };
}

synth_result synthesize_function( truth_table const& table, synth_config const& cfg )
{
  engine eng( table.input_names, cfg );
  auto& a = eng.ar();
  uint32_t const m = table.num_outputs();
  std::unordered_set<uint32_t> const nothing;

  std::vector<std::optional<uint32_t>> chosen( m );

  /* pass-through outputs become wires and seed nothing */
  for ( auto const& pt : pass_through_outputs( table ) )
    chosen[pt.output_index] = a.lit( pt.input_index, pt.complemented );

  /* order remaining outputs by standalone difficulty, then declared order */
  std::vector<std::pair<cost_vector, uint32_t>> order;
  bitvec const care( table.num_rows(), true );
  for ( uint32_t j = 0; j < m; ++j )
  {
    if ( chosen[j] )
      continue;
    auto const roots = eng.solve( care, table.columns[j], cfg.max_depth, {} );
    if ( roots.empty() )
      throw synthesis_error( "no completion within depth budget for output '" +
                             table.output_names[j] + "'" );
    order.emplace_back( a.cone_cost( { roots.front() }, nothing ), j );
  }
  std::stable_sort( order.begin(), order.end(),
                    []( auto const& x, auto const& y ) { return x.first < y.first; } );

  /* re-rank per output against everything built so far */
  for ( auto const& [std_cost, j] : order )
  {
    auto const roots = eng.solve( care, table.columns[j], cfg.max_depth, {} );
    if ( roots.empty() )
      throw synthesis_error( "no completion within depth budget for output '" +
                             table.output_names[j] + "'" );
    uint32_t best = roots.front();
    for ( uint32_t r : roots )
    {
      if ( eng.better( r, best ) )
        best = r;
    }
    chosen[j] = best;
  }

  std::vector<std::pair<std::string, uint32_t>> outs;
  for ( uint32_t j = 0; j < m; ++j )
    outs.emplace_back( table.output_names[j], *chosen[j] );
  auto net = cone_to_netlist( a, table.input_names, outs );

  auto const check = equivalence_check( net, table );
  if ( !check.matched )
    throw synthesis_error( "internal error: synthesized netlist mismatches specification at row " +
                           std::to_string( check.first_mismatch_row ) );
  return { net, metrics( net ).cost };
}

} // namespace revmaj
