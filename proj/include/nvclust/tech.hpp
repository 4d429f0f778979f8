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
  \file tech.hpp
  \brief Technology parameters and the flat `section.key = value` file format

  Sections: `gate.<KIND>.*` (area/power/delay per gate kind),
  `ff.<KIND>.*` for DFF/NVFF/LEFF cells (area/power/t_wr/t_rd/
  write_energy, plus `*_per_leaf` increments for LEFF), `ff.INPUT.*` /
  `ff.OUTPUT.*` for the non-volatile boundary registers that model
  primary I/O in path analysis, `device.*` for the MTJ macromodel and
  LLG constants, and `clock.period`.
*/

#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "device.hpp"
#include "errors.hpp"
#include "llg.hpp"
#include "netlist.hpp"

namespace nvclust
{

struct gate_cost
{
  double area_um2 = 0.0;
  double power_uw = 0.0;
  double delay_ns = 0.0;
};

struct ff_cost
{
  double area_um2 = 0.0;
  double power_uw = 0.0;
  double t_wr_ns = 0.0;
  double t_rd_ns = 0.0;
  double write_energy_fj = 0.0;
};

struct tech_params
{
  std::map<gate_kind, gate_cost> gates;
  ff_cost dff;
  ff_cost nvff;
  ff_cost leff;          /* base cell */
  ff_cost leff_per_leaf; /* increment per embedded function input */
  ff_cost input_reg;     /* boundary register modeling a primary input */
  ff_cost output_reg;    /* boundary register modeling a primary output */
  mtj_params mtj;
  llg_physics physics;
  double clock_period_ns = 10.0;

  const gate_cost& gate( gate_kind k ) const
  {
    auto it = gates.find( k );
    if ( it == gates.end() )
    {
      throw validation_error( std::string( "technology does not price gate kind " ) + to_string( k ) );
    }
    return it->second;
  }

  ff_cost ff( ff_kind kind, size_t leaves = 0 ) const
  {
    switch ( kind )
    {
    case ff_kind::DFF:
      return dff;
    case ff_kind::NVFF:
      return nvff;
    case ff_kind::LEFF:
    {
      ff_cost c = leff;
      const double n = static_cast<double>( leaves );
      c.area_um2 += n * leff_per_leaf.area_um2;
      c.power_uw += n * leff_per_leaf.power_uw;
      c.t_wr_ns += n * leff_per_leaf.t_wr_ns;
      c.t_rd_ns += n * leff_per_leaf.t_rd_ns;
      c.write_energy_fj += n * leff_per_leaf.write_energy_fj;
      return c;
    }
    }
    throw validation_error( "technology: unknown flip-flop kind" );
  }
};

namespace detail
{

inline bool assign_ff_field( ff_cost& c, const std::string& field, double value )
{
  if ( field == "area" )
    c.area_um2 = value;
  else if ( field == "power" )
    c.power_uw = value;
  else if ( field == "t_wr" )
    c.t_wr_ns = value;
  else if ( field == "t_rd" )
    c.t_rd_ns = value;
  else if ( field == "write_energy" )
    c.write_energy_fj = value;
  else
    return false;
  return true;
}

} // namespace detail

/*! \brief Parses the flat key-value technology format.
 *
 * Unknown keys and malformed lines are rejected; after parsing, every
 * gate kind and flip-flop kind must have been priced and all values must
 * be non-negative.
 */
inline tech_params parse_tech( std::istream& in )
{
  tech_params tech;
  std::map<std::string, bool> seen;

  std::string raw;
  int line_no = 0;
  while ( std::getline( in, raw ) )
  {
    ++line_no;
    std::string line = raw;
    if ( auto hash = line.find( '#' ); hash != std::string::npos )
      line.resize( hash );
    std::istringstream ls( line );
    std::string key, eq;
    double value;
    if ( !( ls >> key ) )
      continue; /* blank */
    if ( !( ls >> eq && eq == "=" && ls >> value ) )
    {
      throw parse_error( line_no, 1, "expected 'section.key = number'" );
    }
    std::string rest;
    if ( ls >> rest )
    {
      throw parse_error( line_no, 1, "trailing text after value" );
    }
    if ( value < 0.0 )
    {
      throw parse_error( line_no, 1, "technology values must be >= 0 ('" + key + "')" );
    }
    seen[key] = true;

    /* split into section / middle / field */
    const auto dot1 = key.find( '.' );
    const auto dot2 = key.rfind( '.' );
    const std::string section = key.substr( 0, dot1 );

    bool ok = false;
    if ( section == "clock" && key == "clock.period" )
    {
      tech.clock_period_ns = value;
      ok = true;
    }
    else if ( section == "gate" && dot1 != std::string::npos && dot2 != dot1 )
    {
      const std::string kind_s = key.substr( dot1 + 1, dot2 - dot1 - 1 );
      const std::string field = key.substr( dot2 + 1 );
      for ( gate_kind k : all_gate_kinds )
      {
        if ( kind_s == to_string( k ) )
        {
          gate_cost& c = tech.gates[k];
          if ( field == "area" )
            c.area_um2 = value, ok = true;
          else if ( field == "power" )
            c.power_uw = value, ok = true;
          else if ( field == "delay" )
            c.delay_ns = value, ok = true;
          break;
        }
      }
    }
    else if ( section == "ff" && dot1 != std::string::npos && dot2 != dot1 )
    {
      const std::string kind_s = key.substr( dot1 + 1, dot2 - dot1 - 1 );
      std::string field = key.substr( dot2 + 1 );
      ff_cost* target = nullptr;
      if ( kind_s == "DFF" )
        target = &tech.dff;
      else if ( kind_s == "NVFF" )
        target = &tech.nvff;
      else if ( kind_s == "LEFF" )
      {
        if ( field.size() > 9 && field.substr( field.size() - 9 ) == "_per_leaf" )
        {
          field = field.substr( 0, field.size() - 9 );
          target = &tech.leff_per_leaf;
        }
        else
        {
          target = &tech.leff;
        }
      }
      else if ( kind_s == "INPUT" )
        target = &tech.input_reg;
      else if ( kind_s == "OUTPUT" )
        target = &tech.output_reg;
      if ( target != nullptr )
        ok = detail::assign_ff_field( *target, field, value );
    }
    else if ( section == "device" && dot1 != std::string::npos )
    {
      const std::string field = key.substr( dot1 + 1 );
      ok = true;
      if ( field == "delta" )
        tech.mtj.delta_kt = value;
      else if ( field == "delta_ref" )
        tech.mtj.delta_ref_kt = value;
      else if ( field == "i_c_ref" )
        tech.mtj.i_c_ref_ua = value;
      else if ( field == "r_p" )
        tech.mtj.r_p_ohm = value;
      else if ( field == "r_ap" )
        tech.mtj.r_ap_ohm = value;
      else if ( field == "r_hm" )
        tech.mtj.r_hm_ohm = value;
      else if ( field == "t_wr" )
        tech.mtj.t_wr_ns = value;
      else if ( field == "tau0" )
        tech.mtj.tau0_ns = value;
      else if ( field == "alpha" )
        tech.physics.alpha = value;
      else if ( field == "h_k" )
        tech.physics.h_k_a_per_m = value;
      else if ( field == "st_coeff" )
        tech.physics.st_coeff_a_per_m_per_ua = value;
      else if ( field == "tilt" )
        tech.physics.initial_tilt_deg = value;
      else
        ok = false;
    }
    if ( !ok )
    {
      throw parse_error( line_no, 1, "unknown technology key '" + key + "'" );
    }
  }

  for ( gate_kind k : all_gate_kinds )
  {
    if ( tech.gates.count( k ) == 0 )
    {
      throw validation_error( std::string( "technology file misses section gate." ) + to_string( k ) );
    }
  }
  for ( const char* kind : { "DFF", "NVFF", "LEFF" } )
  {
    if ( !seen.count( std::string( "ff." ) + kind + ".area" ) )
    {
      throw validation_error( std::string( "technology file misses section ff." ) + kind );
    }
  }
  if ( !seen.count( "clock.period" ) )
  {
    throw validation_error( "technology file misses clock.period" );
  }
  /* boundary registers default to NVFF timing when their section is absent */
  bool has_input = false, has_output = false;
  for ( const auto& [key, _] : seen )
  {
    has_input = has_input || key.rfind( "ff.INPUT.", 0 ) == 0;
    has_output = has_output || key.rfind( "ff.OUTPUT.", 0 ) == 0;
  }
  if ( !has_input )
    tech.input_reg = tech.nvff;
  if ( !has_output )
    tech.output_reg = tech.nvff;
  return tech;
}

inline tech_params read_tech_file( const std::string& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw std::runtime_error( "cannot open technology file '" + path + "'" );
  }
  return parse_tech( in );
}

/*! \brief FNV-1a hash of a file's bytes; recorded in report headers. */
inline std::string file_hash_hex( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw std::runtime_error( "cannot open file '" + path + "'" );
  }
  uint64_t h = 0xcbf29ce484222325ull;
  char c;
  while ( in.get( c ) )
  {
    h ^= static_cast<unsigned char>( c );
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

} // namespace nvclust
