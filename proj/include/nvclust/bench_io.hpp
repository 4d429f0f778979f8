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
  \file bench_io.hpp
  \brief ISCAS-89 `.bench` reader and writer

  Grammar: `INPUT(x)`, `OUTPUT(x)`, `y = KIND(a, b, ...)`, `#` comments
  to end of line, blank lines.  Gate kinds are matched case-insensitively.
  `DFF` lines create flip-flops.  One extension for rewritten designs:
  `y = LEFF_<hex>(l1, ..., lk)` declares a logic-embedded flip-flop whose
  truth table is the hex word (arity = leaf count), emitted together with
  a `# leff arity=K table=0x<hex>` comment line.
*/

#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "netlist.hpp"

namespace nvclust
{

namespace detail
{

inline bool is_id_char( char c )
{
  return !std::isspace( static_cast<unsigned char>( c ) ) && c != '(' && c != ')' && c != ',' && c != '=' && c != '#';
}

struct line_scanner
{
  const std::string& text;
  int line_no;
  size_t pos = 0;

  void skip_ws()
  {
    while ( pos < text.size() && std::isspace( static_cast<unsigned char>( text[pos] ) ) )
      ++pos;
  }

  bool at_end()
  {
    skip_ws();
    return pos >= text.size();
  }

  int column() const { return static_cast<int>( pos ) + 1; }

  std::string expect_id( const char* what )
  {
    skip_ws();
    size_t start = pos;
    while ( pos < text.size() && is_id_char( text[pos] ) )
      ++pos;
    if ( pos == start )
    {
      throw parse_error( line_no, column(), std::string( "expected " ) + what );
    }
    return text.substr( start, pos - start );
  }

  void expect_char( char c )
  {
    skip_ws();
    if ( pos >= text.size() || text[pos] != c )
    {
      throw parse_error( line_no, column(), std::string( "expected '" ) + c + "'" );
    }
    ++pos;
  }

  bool try_char( char c )
  {
    skip_ws();
    if ( pos < text.size() && text[pos] == c )
    {
      ++pos;
      return true;
    }
    return false;
  }
};

inline std::string upper( std::string s )
{
  for ( char& c : s )
    c = static_cast<char>( std::toupper( static_cast<unsigned char>( c ) ) );
  return s;
}

inline bool gate_kind_from_string( const std::string& up, gate_kind& out )
{
  for ( gate_kind k : all_gate_kinds )
  {
    if ( up == to_string( k ) )
    {
      out = k;
      return true;
    }
  }
  /* common single-buffer alias used by some bench dialects */
  if ( up == "BUF" )
  {
    out = gate_kind::BUFF;
    return true;
  }
  return false;
}

} // namespace detail

inline netlist parse_bench( std::istream& in, const std::string& name = "" )
{
  netlist n;
  n.set_name( name );

  std::string raw;
  int line_no = 0;
  while ( std::getline( in, raw ) )
  {
    ++line_no;
    std::string line = raw;
    if ( auto hash = line.find( '#' ); hash != std::string::npos )
      line.resize( hash );
    detail::line_scanner sc{ line, line_no };
    if ( sc.at_end() )
      continue;

    const int first_col = sc.column();
    std::string first = sc.expect_id( "identifier" );
    std::string first_up = detail::upper( first );

    if ( first_up == "INPUT" || first_up == "OUTPUT" )
    {
      sc.expect_char( '(' );
      std::string id = sc.expect_id( "net id" );
      sc.expect_char( ')' );
      if ( !sc.at_end() )
        throw parse_error( line_no, sc.column(), "trailing text after declaration" );
      if ( first_up == "INPUT" )
      {
        if ( n.has_net( id ) )
          throw parse_error( line_no, first_col, "duplicate driver for net '" + id + "'" );
        n.add_input( id );
      }
      else
      {
        n.add_output( id );
      }
      continue;
    }

    /* assignment form: id = KIND(args) */
    sc.expect_char( '=' );
    const int kind_col = sc.column();
    std::string kind_tok = sc.expect_id( "gate kind" );
    std::string kind_up = detail::upper( kind_tok );
    sc.expect_char( '(' );
    std::vector<std::string> args;
    if ( !sc.try_char( ')' ) )
    {
      args.push_back( sc.expect_id( "net id" ) );
      while ( sc.try_char( ',' ) )
        args.push_back( sc.expect_id( "net id" ) );
      sc.expect_char( ')' );
    }
    if ( !sc.at_end() )
      throw parse_error( line_no, sc.column(), "trailing text after gate definition" );
    if ( n.has_net( first ) )
      throw parse_error( line_no, first_col, "duplicate driver for net '" + first + "'" );

    if ( kind_up == "DFF" || kind_up == "NVFF" )
    {
      if ( args.size() != 1 )
        throw parse_error( line_no, kind_col, kind_up + " takes exactly 1 input, got " + std::to_string( args.size() ) );
      n.add_ff( first, args[0], kind_up == "DFF" ? ff_kind::DFF : ff_kind::NVFF );
      continue;
    }
    if ( kind_up.rfind( "LEFF_", 0 ) == 0 )
    {
      if ( args.empty() )
        throw parse_error( line_no, kind_col, "LEFF takes at least 1 leaf net" );
      if ( args.size() > static_cast<size_t>( truth_table::max_arity ) )
        throw parse_error( line_no, kind_col, "LEFF arity exceeds " + std::to_string( truth_table::max_arity ) );
      truth_table fn;
      try
      {
        fn = truth_table::from_hex_digits( kind_tok.substr( 5 ), static_cast<int>( args.size() ) );
      }
      catch ( const std::invalid_argument& e )
      {
        throw parse_error( line_no, kind_col, e.what() );
      }
      n.add_leff( first, fn, args );
      continue;
    }

    gate_kind gk;
    if ( !detail::gate_kind_from_string( kind_up, gk ) )
      throw parse_error( line_no, kind_col, "unsupported gate kind '" + kind_tok + "'" );
    const bool unary = gk == gate_kind::NOT || gk == gate_kind::BUFF;
    if ( unary && args.size() != 1 )
      throw parse_error( line_no, kind_col,
                         std::string( to_string( gk ) ) + " takes exactly 1 input, got " + std::to_string( args.size() ) );
    if ( !unary && args.size() < 2 )
      throw parse_error( line_no, kind_col,
                         std::string( to_string( gk ) ) + " takes at least 2 inputs, got " + std::to_string( args.size() ) );
    n.add_gate( first, gk, args );
  }

  n.validate();
  return n;
}

inline netlist parse_bench_string( const std::string& text, const std::string& name = "" )
{
  std::istringstream in( text );
  return parse_bench( in, name );
}

inline netlist read_bench_file( const std::string& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw std::runtime_error( "cannot open bench file '" + path + "'" );
  }
  std::string stem = path;
  if ( auto slash = stem.find_last_of( "/\\" ); slash != std::string::npos )
    stem = stem.substr( slash + 1 );
  if ( auto dot = stem.find_last_of( '.' ); dot != std::string::npos )
    stem = stem.substr( 0, dot );
  return parse_bench( in, stem );
}

inline void emit_bench( const netlist& n, std::ostream& os )
{
  if ( !n.name().empty() )
    os << "# " << n.name() << "\n";
  for ( const auto& in : n.inputs() )
    os << "INPUT(" << in << ")\n";
  for ( const auto& out : n.outputs() )
    os << "OUTPUT(" << out << ")\n";
  os << "\n";
  for ( const auto& [id, ff] : n.ffs() )
  {
    if ( ff.kind == ff_kind::LEFF )
    {
      os << "# leff arity=" << ff.leaves.size() << " table=" << ff.function.to_hex() << "\n";
      os << id << " = LEFF_" << ff.function.to_hex().substr( 2 ) << "(";
      for ( size_t i = 0; i < ff.leaves.size(); ++i )
        os << ( i ? ", " : "" ) << ff.leaves[i];
      os << ")\n";
    }
    else
    {
      os << id << " = " << to_string( ff.kind ) << "(" << ff.d << ")\n";
    }
  }
  for ( const auto& [id, g] : n.gates() )
  {
    os << id << " = " << to_string( g.kind ) << "(";
    for ( size_t i = 0; i < g.inputs.size(); ++i )
      os << ( i ? ", " : "" ) << g.inputs[i];
    os << ")\n";
  }
}

inline std::string emit_bench_string( const netlist& n )
{
  std::ostringstream os;
  emit_bench( n, os );
  return os.str();
}

} // namespace nvclust
