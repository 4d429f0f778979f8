/* nvclust: non-volatile clustering synthesis and analysis library
 * Copyright (C) 2025-2026  nvclust contributors
 *
 * Permission is hereby granted, free of charge, to any person
 * obtaining a copy of this software and associated documentation
 * files (the "Software"), to deal in the Software without
 * restriction, including without limitation the rights to use,
 * copy, modify, merge, publish, distribute, sublicense, and/or sell
 * copies of the Software, and to permit persons to whom the
 * Software is furnished to do so, subject to the following
 * conditions:
 *
 * The above copyright notice and this permission notice shall be
 * included in all copies or substantial portions of the Software.
 *
 * THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
 * EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES
 * OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND
 * NONINFRINGEMENT. IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT
 * HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY,
 * WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
 * FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
 * OTHER DEALINGS IN THE SOFTWARE.
 */

/*!
  \file truth_table.hpp
  \brief Small single-word truth tables (arity 0..6)

  Bit i of the table is the function value for input assignment i, with
  variable 0 mapped to the least-significant bit of the assignment.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nvclust
{

class truth_table
{
public:
  static constexpr int max_arity = 6;

  truth_table() = default;

  truth_table( int arity, uint64_t bits )
      : arity_( arity ), bits_( bits & mask( arity ) )
  {
    if ( arity < 0 || arity > max_arity )
    {
      throw std::invalid_argument( "truth_table: arity must be in [0, 6], got " + std::to_string( arity ) );
    }
  }

  static uint64_t mask( int arity )
  {
    const unsigned rows = 1u << arity;
    return rows == 64u ? ~0ull : ( 1ull << rows ) - 1ull;
  }

  /* f(x) = x */
  static truth_table identity()
  {
    return truth_table( 1, 0x2 );
  }

  static truth_table constant( bool value, int arity = 0 )
  {
    return truth_table( arity, value ? mask( arity ) : 0ull );
  }

  int arity() const { return arity_; }
  uint64_t bits() const { return bits_; }
  uint64_t num_rows() const { return 1ull << arity_; }

  bool value( uint64_t assignment ) const
  {
    return ( bits_ >> ( assignment & ( num_rows() - 1 ) ) ) & 1ull;
  }

  void set_value( uint64_t assignment, bool v )
  {
    const uint64_t bit = 1ull << assignment;
    bits_ = v ? ( bits_ | bit ) : ( bits_ & ~bit );
  }

  truth_table complement() const
  {
    return truth_table( arity_, ~bits_ & mask( arity_ ) );
  }

  bool is_constant() const
  {
    return bits_ == 0ull || bits_ == mask( arity_ );
  }

  /* lowercase hex, fixed width so dumps are byte-stable */
  std::string to_hex() const
  {
    static const char digits[] = "0123456789abcdef";
    const int width = std::max( 1, static_cast<int>( num_rows() / 4 ) );
    std::string s( static_cast<size_t>( width ), '0' );
    uint64_t v = bits_;
    for ( int i = width - 1; i >= 0; --i )
    {
      s[static_cast<size_t>( i )] = digits[v & 0xf];
      v >>= 4;
    }
    return "0x" + s;
  }

  /*! \brief Parses raw hex digits (no 0x prefix) against a known arity. */
  static truth_table from_hex_digits( const std::string& digits, int arity )
  {
    if ( digits.empty() || digits.size() > 16 )
    {
      throw std::invalid_argument( "truth_table: bad hex table '" + digits + "'" );
    }
    uint64_t v = 0;
    for ( char c : digits )
    {
      int d;
      if ( c >= '0' && c <= '9' )
        d = c - '0';
      else if ( c >= 'a' && c <= 'f' )
        d = c - 'a' + 10;
      else if ( c >= 'A' && c <= 'F' )
        d = c - 'A' + 10;
      else
        throw std::invalid_argument( "truth_table: bad hex digit in '" + digits + "'" );
      v = ( v << 4 ) | static_cast<uint64_t>( d );
    }
    if ( ( v & ~mask( arity ) ) != 0 )
    {
      throw std::invalid_argument( "truth_table: table '" + digits + "' does not fit arity " + std::to_string( arity ) );
    }
    return truth_table( arity, v );
  }

  friend bool operator==( const truth_table& a, const truth_table& b )
  {
    return a.arity_ == b.arity_ && a.bits_ == b.bits_;
  }
  friend bool operator!=( const truth_table& a, const truth_table& b )
  {
    return !( a == b );
  }
  friend bool operator<( const truth_table& a, const truth_table& b )
  {
    return a.arity_ != b.arity_ ? a.arity_ < b.arity_ : a.bits_ < b.bits_;
  }

private:
  int arity_ = 0;
  uint64_t bits_ = 0;
};

} // namespace nvclust
