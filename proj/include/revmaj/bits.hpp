/*!
  \file bits.hpp
  \brief Packed bit-vector of length 2^n used for truth-table columns.
*/

#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace revmaj
{

/*! \brief Fixed-length bit-vector backed by 64-bit words.
 *
 * Row r of a truth-table column is bit r.  All bitwise operations mask
 * the unused tail of the last word, so equality and popcount are exact.
 */
class bitvec
{
public:
  bitvec() = default;

  explicit bitvec( uint32_t num_bits, bool fill = false )
      : num_bits_( num_bits ), words_( word_count( num_bits ), fill ? ~0ull : 0ull )
  {
    mask_tail();
  }

  static uint32_t word_count( uint32_t num_bits )
  {
    return ( num_bits + 63u ) / 64u;
  }

  uint32_t size() const { return num_bits_; }

  bool get( uint32_t pos ) const
  {
    assert( pos < num_bits_ );
    return ( words_[pos >> 6] >> ( pos & 63u ) ) & 1u;
  }

  void set( uint32_t pos, bool value )
  {
    assert( pos < num_bits_ );
    uint64_t const m = 1ull << ( pos & 63u );
    if ( value )
      words_[pos >> 6] |= m;
    else
      words_[pos >> 6] &= ~m;
  }

  uint32_t count_ones() const
  {
    uint32_t n = 0;
    for ( auto w : words_ )
      n += static_cast<uint32_t>( std::popcount( w ) );
    return n;
  }

  bool all_zero() const
  {
    for ( auto w : words_ )
      if ( w != 0 )
        return false;
    return true;
  }

  bitvec operator~() const
  {
    bitvec r = *this;
    for ( auto& w : r.words_ )
      w = ~w;
    r.mask_tail();
    return r;
  }

  bitvec& operator&=( bitvec const& o )
  {
    assert( num_bits_ == o.num_bits_ );
    for ( size_t i = 0; i < words_.size(); ++i )
      words_[i] &= o.words_[i];
    return *this;
  }

  bitvec& operator|=( bitvec const& o )
  {
    assert( num_bits_ == o.num_bits_ );
    for ( size_t i = 0; i < words_.size(); ++i )
      words_[i] |= o.words_[i];
    return *this;
  }

  bitvec& operator^=( bitvec const& o )
  {
    assert( num_bits_ == o.num_bits_ );
    for ( size_t i = 0; i < words_.size(); ++i )
      words_[i] ^= o.words_[i];
    return *this;
  }

  friend bitvec operator&( bitvec a, bitvec const& b ) { return a &= b; }
  friend bitvec operator|( bitvec a, bitvec const& b ) { return a |= b; }
  friend bitvec operator^( bitvec a, bitvec const& b ) { return a ^= b; }

  friend bool operator==( bitvec const& a, bitvec const& b )
  {
    return a.num_bits_ == b.num_bits_ && a.words_ == b.words_;
  }

  friend bool operator!=( bitvec const& a, bitvec const& b ) { return !( a == b ); }

  friend bool operator<( bitvec const& a, bitvec const& b )
  {
    if ( a.num_bits_ != b.num_bits_ )
      return a.num_bits_ < b.num_bits_;
    return a.words_ < b.words_;
  }

  /*! \brief Majority of three equal-length vectors, bit-parallel. */
  static bitvec majority( bitvec const& a, bitvec const& b, bitvec const& c )
  {
    assert( a.size() == b.size() && b.size() == c.size() );
    bitvec r = a;
    for ( size_t i = 0; i < r.words_.size(); ++i )
      r.words_[i] = ( a.words_[i] & ( b.words_[i] ^ c.words_[i] ) ) ^ ( b.words_[i] & c.words_[i] );
    return r;
  }

  /*! \brief Number of positions where both vectors hold the same bit. */
  static uint32_t agreements( bitvec const& a, bitvec const& b )
  {
    assert( a.num_bits_ == b.num_bits_ );
    uint32_t n = 0;
    for ( size_t i = 0; i < a.words_.size(); ++i )
      n += static_cast<uint32_t>( std::popcount( ~( a.words_[i] ^ b.words_[i] ) ) );
    /* discount the masked tail counted by ~ */
    uint32_t const tail = a.num_bits_ & 63u;
    if ( tail != 0 )
      n -= 64u - tail;
    return n;
  }

  /*! \brief True if a and b agree on every position selected by mask. */
  static bool equal_under_mask( bitvec const& a, bitvec const& b, bitvec const& mask )
  {
    assert( a.num_bits_ == b.num_bits_ && a.num_bits_ == mask.num_bits_ );
    for ( size_t i = 0; i < a.words_.size(); ++i )
      if ( ( a.words_[i] ^ b.words_[i] ) & mask.words_[i] )
        return false;
    return true;
  }

  std::string to_string() const
  {
    std::string s;
    s.reserve( num_bits_ );
    for ( uint32_t i = 0; i < num_bits_; ++i )
      s.push_back( get( i ) ? '1' : '0' );
    return s;
  }

  size_t hash() const
  {
    size_t h = std::hash<uint32_t>{}( num_bits_ );
    for ( auto w : words_ )
      h = h * 0x9e3779b97f4a7c15ull + std::hash<uint64_t>{}( w );
    return h;
  }

private:
  void mask_tail()
  {
    uint32_t const tail = num_bits_ & 63u;
    if ( tail != 0 && !words_.empty() )
      words_.back() &= ( 1ull << tail ) - 1u;
  }

  uint32_t num_bits_{ 0 };
  std::vector<uint64_t> words_;
};

} // namespace revmaj

template<>
struct std::hash<revmaj::bitvec>
{
  size_t operator()( revmaj::bitvec const& v ) const noexcept { return v.hash(); }
};
