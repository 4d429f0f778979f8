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
  \file analysis.hpp
  \brief Cost aggregation, sensitive-time paths and design vulnerability time

  Area and power are sums over elements.  Delay is the worst
  register-to-register path including the source read time and the
  destination write time.  The vulnerability analysis enumerates all
  connected (source, destination) pairs of non-volatile endpoints --
  input registers, flip-flops and output registers -- and charges each
  pair its sensitive time t_S = t_WR + t_RD + t_C, where t_C is the
  maximum combinational delay between the pair; the design vulnerability
  time is the sum over all pairs.
*/

#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "netlist.hpp"
#include "tech.hpp"

namespace nvclust
{

struct cost_report
{
  double area_um2 = 0.0;
  double power_uw = 0.0;
  double delay_ns = 0.0;
  double energy_uw_ns = 0.0; /* power * delay, maintained exactly */
};

struct sensitive_path
{
  std::string source;      /* "in:<pi>" or flip-flop id */
  std::string destination; /* "out:<po>" or flip-flop id */
  double t_c_ns = 0.0;
  double t_s_ns = 0.0;
};

struct dvt_report
{
  std::vector<sensitive_path> paths;
  double dvt_ns = 0.0;
};

struct improvement
{
  double area_pct = 0.0;
  double power_pct = 0.0;
  double delay_pct = 0.0;
  double energy_pct = 0.0;
};

namespace detail
{

/*! \brief Longest combinational arrival per net from a set of seeded source nets.
 *
 * Arrival of a seeded net is its seed value; traversing a gate adds the
 * gate's delay on top of the worst input arrival.  Nets unreachable
 * from any seed stay at -infinity.
 */
inline std::map<std::string, double> longest_arrival( const netlist& n, const tech_params& tech,
                                                      const std::map<std::string, double>& seeds )
{
  constexpr double unreached = -std::numeric_limits<double>::infinity();
  std::map<std::string, double> arrival;
  for ( const auto& in : n.inputs() )
    arrival[in] = unreached;
  for ( const auto& [id, ff] : n.ffs() )
    arrival[id] = unreached;
  for ( const auto& [id, g] : n.gates() )
    arrival[id] = unreached;
  for ( const auto& [net, at] : seeds )
    arrival[net] = at;

  for ( const gate* g : n.topo_order() )
  {
    double worst = unreached;
    for ( const auto& in : g->inputs )
      worst = std::max( worst, arrival.at( in ) );
    if ( worst != unreached )
    {
      const double through = worst + tech.gate( g->kind ).delay_ns;
      arrival[g->output] = std::max( arrival.at( g->output ), through );
    }
  }
  return arrival;
}

inline ff_cost ff_cost_of( const netlist& n, const tech_params& tech, const flip_flop& ff )
{
  return tech.ff( ff.kind, ff.leaves.size() );
}

} // namespace detail

/*! \brief Area/power/delay/energy of a netlist under a technology. */
inline cost_report cost( const netlist& n, const tech_params& tech )
{
  cost_report rep;
  for ( const auto& [id, g] : n.gates() )
  {
    const gate_cost& c = tech.gate( g.kind );
    rep.area_um2 += c.area_um2;
    rep.power_uw += c.power_uw;
  }
  for ( const auto& [id, ff] : n.ffs() )
  {
    const ff_cost c = detail::ff_cost_of( n, tech, ff );
    rep.area_um2 += c.area_um2;
    rep.power_uw += c.power_uw;
  }

  /* worst register-to-register path: t_RD(source) + gate delays + t_WR(dest) */
  std::map<std::string, double> seeds;
  for ( const auto& in : n.inputs() )
    seeds[in] = tech.input_reg.t_rd_ns;
  for ( const auto& [id, ff] : n.ffs() )
    seeds[id] = detail::ff_cost_of( n, tech, ff ).t_rd_ns;
  const auto arrival = detail::longest_arrival( n, tech, seeds );

  double delay = 0.0;
  auto consider = [&]( const std::string& net, double t_wr ) {
    const double at = arrival.at( net );
    if ( at != -std::numeric_limits<double>::infinity() )
      delay = std::max( delay, at + t_wr );
  };
  for ( const auto& [id, ff] : n.ffs() )
  {
    const ff_cost c = detail::ff_cost_of( n, tech, ff );
    if ( ff.kind == ff_kind::LEFF )
    {
      for ( const auto& leaf : ff.leaves )
        consider( leaf, c.t_wr_ns );
    }
    else
    {
      consider( ff.d, c.t_wr_ns );
    }
  }
  for ( const auto& out : n.outputs() )
    consider( out, tech.output_reg.t_wr_ns );

  rep.delay_ns = delay;
  rep.energy_uw_ns = rep.power_uw * rep.delay_ns;
  return rep;
}

/*! \brief Sensitive-time path enumeration and design vulnerability time.
 *
 * Requires a fully non-volatile design (NVFF/LEFF only); a volatile DFF
 * has no defined vulnerability window and is rejected.
 */
inline dvt_report sensitive_paths( const netlist& n, const tech_params& tech )
{
  for ( const auto& [id, ff] : n.ffs() )
  {
    if ( ff.kind == ff_kind::DFF )
    {
      throw validation_error( "sensitive_paths: volatile DFF '" + id + "' present; DVT is defined for NV designs" );
    }
  }

  dvt_report rep;
  constexpr double unreached = -std::numeric_limits<double>::infinity();

  /* sources: input registers (declared order), then flip-flops (id order) */
  struct source_endpoint
  {
    std::string label;
    std::string net;
    bool is_ff;
  };
  std::vector<source_endpoint> sources;
  for ( const auto& in : n.inputs() )
    sources.push_back( { "in:" + in, in, false } );
  for ( const auto& [id, ff] : n.ffs() )
    sources.push_back( { id, id, true } );

  for ( const auto& [src_label, src_net, src_is_ff] : sources )
  {
    const double t_rd = src_is_ff ? detail::ff_cost_of( n, tech, *n.find_ff( src_net ) ).t_rd_ns
                                  : tech.input_reg.t_rd_ns;
    const auto arrival = detail::longest_arrival( n, tech, { { src_net, 0.0 } } );

    /* destinations: flip-flops (id order), then output registers (declared order) */
    for ( const auto& [id, ff] : n.ffs() )
    {
      const ff_cost c = detail::ff_cost_of( n, tech, ff );
      double t_c = unreached;
      if ( ff.kind == ff_kind::LEFF )
      {
        for ( const auto& leaf : ff.leaves )
          t_c = std::max( t_c, arrival.at( leaf ) );
      }
      else
      {
        t_c = arrival.at( ff.d );
      }
      if ( t_c != unreached )
      {
        sensitive_path p;
        p.source = src_label;
        p.destination = id;
        p.t_c_ns = t_c;
        p.t_s_ns = c.t_wr_ns + t_rd + t_c;
        rep.paths.push_back( p );
      }
    }
    for ( const auto& out : n.outputs() )
    {
      const double t_c = arrival.at( out );
      if ( t_c != unreached )
      {
        sensitive_path p;
        p.source = src_label;
        p.destination = "out:" + out;
        p.t_c_ns = t_c;
        p.t_s_ns = tech.output_reg.t_wr_ns + t_rd + t_c;
        rep.paths.push_back( p );
      }
    }
  }

  for ( const auto& p : rep.paths )
    rep.dvt_ns += p.t_s_ns;
  return rep;
}

/*! \brief Improvement percentages of a candidate over a baseline (100*(base-cand)/base). */
inline improvement compare( const cost_report& baseline, const cost_report& candidate )
{
  auto pct = [&]( double base, double cand, const char* metric ) {
    if ( base <= 0.0 )
    {
      throw std::invalid_argument( std::string( "compare: zero baseline " ) + metric );
    }
    return 100.0 * ( base - cand ) / base;
  };
  improvement imp;
  imp.area_pct = pct( baseline.area_um2, candidate.area_um2, "area" );
  imp.power_pct = pct( baseline.power_uw, candidate.power_uw, "power" );
  imp.delay_pct = pct( baseline.delay_ns, candidate.delay_ns, "delay" );
  imp.energy_pct = pct( baseline.energy_uw_ns, candidate.energy_uw_ns, "energy" );
  return imp;
}

} // namespace nvclust
