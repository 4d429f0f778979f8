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
  \file pg_library.hpp
  \brief Majority/polymorphic gate cell library

  A base majority gate of odd arity n (3 or 5) is reconfigured by
  affixing a subset of its inputs to ON or OFF and wiring the remaining
  positions to distinct variables; the sense amplifier provides the
  complemented output for free, so an optional output inversion is part
  of the realization space.  Enumerating all such configurations yields
  the set of cone functions a single cell can implement: exactly the
  unit-weight threshold functions and (with inversion) their
  complements.  XOR/XNOR are not threshold functions and never appear.
*/

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "truth_table.hpp"

namespace nvclust
{

/*! \brief Majority vote over an odd number of inputs. */
inline bool majority( int n, const std::vector<bool>& bits )
{
  if ( n != 3 && n != 5 )
  {
    throw std::invalid_argument( "majority: base arity must be 3 or 5, got " + std::to_string( n ) );
  }
  if ( static_cast<int>( bits.size() ) != n )
  {
    throw std::invalid_argument( "majority: expected " + std::to_string( n ) + " bits, got " +
                                 std::to_string( bits.size() ) );
  }
  int count = 0;
  for ( bool b : bits )
    count += b ? 1 : 0;
  return count > n / 2;
}

/*! \brief Number of ON inputs at which the write current first exceeds
 * the critical current of an n-input cell.
 *
 * Majority semantics require strictly more than half the inputs, i.e.
 * (n+1)/2 for odd n.
 */
inline int switching_inputs_required( int n )
{
  if ( n < 1 || n % 2 == 0 )
  {
    throw std::invalid_argument( "switching_inputs_required: n must be odd and >= 1, got " + std::to_string( n ) );
  }
  return ( n + 1 ) / 2;
}

/*! \brief One configuration of a base majority gate.
 *
 * Each base input position is either affixed ON, affixed OFF, or bound
 * to one of the realized function's variables (each variable exactly
 * once).  `inverted` complements the sensed output.
 */
struct pg_realization
{
  static constexpr int8_t pin_on = -1;
  static constexpr int8_t pin_off = -2;

  int base_arity = 3;            /* 3 or 5 */
  std::array<int8_t, 5> pins{};  /* first base_arity entries used */
  bool inverted = false;

  int arity() const
  {
    int k = 0;
    for ( int i = 0; i < base_arity; ++i )
      k += pins[static_cast<size_t>( i )] >= 0 ? 1 : 0;
    return k;
  }

  int affixed_on() const
  {
    int k = 0;
    for ( int i = 0; i < base_arity; ++i )
      k += pins[static_cast<size_t>( i )] == pin_on ? 1 : 0;
    return k;
  }

  int affixed_off() const
  {
    int k = 0;
    for ( int i = 0; i < base_arity; ++i )
      k += pins[static_cast<size_t>( i )] == pin_off ? 1 : 0;
    return k;
  }

  bool evaluate( uint64_t assignment ) const
  {
    int count = 0;
    for ( int i = 0; i < base_arity; ++i )
    {
      const int8_t p = pins[static_cast<size_t>( i )];
      bool v;
      if ( p == pin_on )
        v = true;
      else if ( p == pin_off )
        v = false;
      else
        v = ( assignment >> p ) & 1ull;
      count += v ? 1 : 0;
    }
    const bool maj = count > base_arity / 2;
    return inverted ? !maj : maj;
  }

  truth_table realized_table() const
  {
    truth_table tt( arity(), 0 );
    for ( uint64_t a = 0; a < tt.num_rows(); ++a )
      tt.set_value( a, evaluate( a ) );
    return tt;
  }

  /* e.g. AND2 as "0ab": position 0 affixed OFF, variables a and b */
  std::string pattern() const
  {
    std::string s;
    for ( int i = 0; i < base_arity; ++i )
    {
      const int8_t p = pins[static_cast<size_t>( i )];
      if ( p == pin_on )
        s += '1';
      else if ( p == pin_off )
        s += '0';
      else
        s += static_cast<char>( 'a' + p );
    }
    return s;
  }

  friend bool operator==( const pg_realization&, const pg_realization& ) = default;
};

/*! \brief Canonical ordering used to pick one realization per function:
 * smaller base arity first, then lexicographic pattern, then the
 * non-inverted variant.
 */
inline bool realization_less( const pg_realization& a, const pg_realization& b )
{
  if ( a.base_arity != b.base_arity )
    return a.base_arity < b.base_arity;
  const std::string pa = a.pattern(), pb = b.pattern();
  if ( pa != pb )
    return pa < pb;
  return a.inverted < b.inverted;
}

struct pg_cell
{
  std::string name;
  pg_realization realization;
  truth_table function;
  /* cost attributes, bound from the technology file when needed */
  double area_um2 = 0.0;
  double power_uw = 0.0;
  double t_wr_ns = 0.0;
  double t_rd_ns = 0.0;
  double write_energy_fj = 0.0;
};

namespace detail
{

/*! \brief All distinct functions of a base-n gate, canonical realization each. */
inline void enumerate_into( int n, bool allow_inversion,
                            std::map<std::pair<int, uint64_t>, pg_realization>& out )
{
  if ( n != 3 && n != 5 )
  {
    throw std::invalid_argument( "enumerate_pg_functions: base arity must be 3 or 5, got " + std::to_string( n ) );
  }
  /* odometer over {OFF, ON, VAR} per position, then all variable orders */
  std::array<int, 5> token{};
  const int num_tokens = 3;
  const int total = [&] {
    int t = 1;
    for ( int i = 0; i < n; ++i )
      t *= num_tokens;
    return t;
  }();
  for ( int code = 0; code < total; ++code )
  {
    int c = code;
    std::vector<int> var_positions;
    pg_realization base;
    base.base_arity = n;
    for ( int i = 0; i < n; ++i )
    {
      const int t = c % num_tokens;
      c /= num_tokens;
      if ( t == 0 )
        base.pins[static_cast<size_t>( i )] = pg_realization::pin_off;
      else if ( t == 1 )
        base.pins[static_cast<size_t>( i )] = pg_realization::pin_on;
      else
        var_positions.push_back( i );
    }
    const int k = static_cast<int>( var_positions.size() );
    std::vector<int8_t> vars( static_cast<size_t>( k ) );
    for ( int i = 0; i < k; ++i )
      vars[static_cast<size_t>( i )] = static_cast<int8_t>( i );
    /* vars is sorted: iterate every permutation exactly once */
    do
    {
      pg_realization r = base;
      for ( int i = 0; i < k; ++i )
        r.pins[static_cast<size_t>( var_positions[static_cast<size_t>( i )] )] = vars[static_cast<size_t>( i )];
      for ( int inv = 0; inv <= ( allow_inversion ? 1 : 0 ); ++inv )
      {
        r.inverted = inv != 0;
        const truth_table tt = r.realized_table();
        const auto key = std::make_pair( tt.arity(), tt.bits() );
        auto it = out.find( key );
        if ( it == out.end() || realization_less( r, it->second ) )
          out[key] = r;
      }
    } while ( std::next_permutation( vars.begin(), vars.end() ) );
  }
}

inline std::string cell_name( const truth_table& tt, const pg_realization& r )
{
  struct named
  {
    int arity;
    uint64_t bits;
    const char* name;
  };
  static constexpr named well_known[] = {
      { 0, 0x0, "const0" }, { 0, 0x1, "const1" },
      { 1, 0x1, "not" },    { 1, 0x2, "buf" },
      { 2, 0x8, "and2" },   { 2, 0xe, "or2" },
      { 2, 0x7, "nand2" },  { 2, 0x1, "nor2" },
      { 3, 0x80, "and3" },  { 3, 0xfe, "or3" },
      { 3, 0x7f, "nand3" }, { 3, 0x01, "nor3" },
      { 3, 0xe8, "maj3" },  { 3, 0x17, "min3" } };
  for ( const auto& w : well_known )
  {
    if ( tt.arity() == w.arity && tt.bits() == w.bits )
      return w.name;
  }
  if ( tt.arity() == 5 && tt.bits() == pg_realization{ 5, { 0, 1, 2, 3, 4 }, false }.realized_table().bits() )
    return "maj5";
  if ( tt.arity() == 5 && tt.bits() == pg_realization{ 5, { 0, 1, 2, 3, 4 }, true }.realized_table().bits() )
    return "min5";
  /* every remaining cell is a unit-weight threshold or its complement */
  const int threshold = switching_inputs_required( r.base_arity ) - r.affixed_on();
  std::ostringstream name;
  name << ( r.inverted ? "nth" : "th" ) << threshold << "of" << tt.arity();
  if ( tt.is_constant() )
    name << ( tt.value( 0 ) ? "_c1" : "_c0" );
  return name.str();
}

} // namespace detail

/*! \brief All distinct (function, realization) pairs of one base arity. */
inline std::vector<std::pair<truth_table, pg_realization>> enumerate_pg_functions( int n, bool allow_inversion )
{
  std::map<std::pair<int, uint64_t>, pg_realization> canon;
  detail::enumerate_into( n, allow_inversion, canon );
  std::vector<std::pair<truth_table, pg_realization>> result;
  result.reserve( canon.size() );
  for ( const auto& [key, r] : canon )
    result.emplace_back( truth_table( key.first, key.second ), r );
  return result;
}

/*! \brief Immutable cell library built from one or more base arities. */
class pg_library
{
public:
  static pg_library build( bool allow_inversion = true, std::vector<int> base_arities = { 3, 5 } )
  {
    pg_library lib;
    lib.inversion_ = allow_inversion;
    std::map<std::pair<int, uint64_t>, pg_realization> canon;
    for ( int n : base_arities )
    {
      detail::enumerate_into( n, allow_inversion, canon );
      lib.max_base_ = std::max( lib.max_base_, n );
    }
    for ( const auto& [key, r] : canon )
    {
      pg_cell cell;
      cell.function = truth_table( key.first, key.second );
      cell.realization = r;
      cell.name = detail::cell_name( cell.function, r );
      /* library-build self check: realization must reproduce the table */
      if ( r.realized_table() != cell.function )
      {
        throw std::logic_error( "pg_library: realization/table mismatch for " + cell.name );
      }
      lib.cells_.emplace( key, std::move( cell ) );
    }
    return lib;
  }

  const pg_cell* find( const truth_table& f ) const
  {
    auto it = cells_.find( { f.arity(), f.bits() } );
    return it == cells_.end() ? nullptr : &it->second;
  }

  /*! \brief Realizability test for a candidate cone function. */
  std::optional<pg_realization> realize( const truth_table& f ) const
  {
    const pg_cell* cell = find( f );
    return cell ? std::optional<pg_realization>( cell->realization ) : std::nullopt;
  }

  bool contains( const truth_table& f ) const { return find( f ) != nullptr; }

  size_t size() const { return cells_.size(); }
  bool inversion_allowed() const { return inversion_; }

  /*! \brief Largest function arity any cell can realize. */
  int max_realizable_arity() const { return max_base_; }

  const std::map<std::pair<int, uint64_t>, pg_cell>& cells() const { return cells_; }

  /* one line per cell: `name arity table=0x.. base=n affix=pattern inv=0|1` */
  void dump( std::ostream& os ) const
  {
    for ( const auto& [key, cell] : cells_ )
    {
      os << cell.name << " " << cell.function.arity() << " table=" << cell.function.to_hex()
         << " base=" << cell.realization.base_arity << " affix=" << cell.realization.pattern()
         << " inv=" << ( cell.realization.inverted ? 1 : 0 ) << "\n";
    }
  }

private:
  std::map<std::pair<int, uint64_t>, pg_cell> cells_;
  bool inversion_ = true;
  int max_base_ = 3;
};

} // namespace nvclust
