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
  \file intermit.hpp
  \brief Energy-harvesting supply model and intermittent execution

  The supply is an ideal capacitor charged at a constant harvest current;
  execution turns on when the voltage reaches v_on and fails when it
  drops to v_off, giving a piecewise-linear, deterministic on/off trace.
  A seeded jitter pass perturbs segment boundaries to emulate irregular
  ambient sources.

  Intermittent execution clocks the netlist only inside ON segments.
  Cycles that fully fit commit and advance the architectural state; a
  power failure that cuts a cycle discards it.  The failure counts as a
  loss when it lands inside the sensitive window of at least one
  endpoint pair -- the final t_S = t_WR + t_RD + t_C nanoseconds before
  the cycle's commit instant; `losses` counts the (failure, pair) hits
  and `lost_cycles` the cycles they destroyed.  Failures outside every
  window lose nothing: the non-volatile state keeps the last committed
  values and the cycle is re-executed after the next power-up.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "errors.hpp"
#include "netlist.hpp"
#include "rng.hpp"
#include "simulate.hpp"
#include "tech.hpp"

namespace nvclust
{

struct harvester_model
{
  double capacitance_nf = 470.0;   /* store capacitor */
  double harvest_current_ua = 10.0;
  double load_current_ua = 110.0;  /* draw while operating */
  double v_on = 4.5;               /* power-on threshold */
  double v_off = 2.0;              /* power-fail threshold */
  double v_max = 5.0;

  void validate() const
  {
    if ( !( capacitance_nf > 0.0 ) )
      throw std::invalid_argument( "harvester_model: capacitance must be > 0" );
    if ( !( v_max >= v_on && v_on > v_off && v_off > 0.0 ) )
      throw std::invalid_argument( "harvester_model: need v_max >= v_on > v_off > 0" );
    if ( harvest_current_ua < 0.0 || load_current_ua <= 0.0 )
      throw std::invalid_argument( "harvester_model: currents must be positive" );
  }

  /* nF * V / uA -> ns */
  double ramp_time_ns( double dv, double current_ua ) const
  {
    return capacitance_nf * dv / current_ua * 1e6;
  }
};

struct power_segment
{
  double start_ns = 0.0;
  double end_ns = 0.0;
  bool on = false;
};

struct power_trace
{
  std::vector<power_segment> segments;

  double horizon_ns() const { return segments.empty() ? 0.0 : segments.back().end_ns; }

  void validate() const
  {
    double t = 0.0;
    bool last_on = false;
    for ( size_t i = 0; i < segments.size(); ++i )
    {
      const auto& s = segments[i];
      if ( s.start_ns != t )
        throw validation_error( "power_trace: segments must be contiguous from t=0" );
      if ( !( s.end_ns > s.start_ns ) )
        throw validation_error( "power_trace: empty or negative segment" );
      if ( i > 0 && s.on == last_on )
        throw validation_error( "power_trace: segment states must alternate" );
      t = s.end_ns;
      last_on = s.on;
    }
  }
};

/*! \brief Deterministic on/off supply trace from the capacitor dynamics. */
inline power_trace generate_trace( const harvester_model& model, double horizon_ns )
{
  model.validate();
  if ( !( horizon_ns > 0.0 ) )
    throw std::invalid_argument( "generate_trace: horizon must be > 0" );

  power_trace trace;
  auto push = [&]( double start, double end, bool on ) {
    if ( end > start )
      trace.segments.push_back( { start, end, on } );
  };

  if ( model.harvest_current_ua <= 0.0 )
  {
    /* never charges */
    push( 0.0, horizon_ns, false );
    return trace;
  }

  const double t_first_charge = model.ramp_time_ns( model.v_on, model.harvest_current_ua );
  if ( t_first_charge >= horizon_ns )
  {
    push( 0.0, horizon_ns, false );
    return trace;
  }
  push( 0.0, t_first_charge, false );
  double t = t_first_charge;

  if ( model.harvest_current_ua >= model.load_current_ua )
  {
    /* supply never fails */
    push( t, horizon_ns, true );
    return trace;
  }

  const double dv = model.v_on - model.v_off;
  const double t_on = model.ramp_time_ns( dv, model.load_current_ua - model.harvest_current_ua );
  const double t_charge = model.ramp_time_ns( dv, model.harvest_current_ua );
  bool on = true;
  while ( t < horizon_ns )
  {
    const double len = on ? t_on : t_charge;
    const double end = std::min( t + len, horizon_ns );
    push( t, end, on );
    t = end;
    on = !on;
  }
  trace.validate();
  return trace;
}

/*! \brief Perturbs each internal segment boundary uniformly within
 * +/- fraction of the shorter adjacent segment.  Endpoints stay fixed.
 */
inline power_trace jittered_trace( const power_trace& trace, double jitter_fraction, uint64_t seed )
{
  if ( !( jitter_fraction >= 0.0 && jitter_fraction < 0.5 ) )
    throw std::invalid_argument( "jittered_trace: fraction must be in [0, 0.5)" );
  trace.validate();
  if ( trace.segments.size() < 2 || jitter_fraction == 0.0 )
    return trace;

  rng gen( seed );
  std::vector<double> bounds;
  bounds.reserve( trace.segments.size() + 1 );
  bounds.push_back( trace.segments.front().start_ns );
  for ( const auto& s : trace.segments )
    bounds.push_back( s.end_ns );

  for ( size_t i = 1; i + 1 < bounds.size(); ++i )
  {
    const double left_len = trace.segments[i - 1].end_ns - trace.segments[i - 1].start_ns;
    const double right_len = trace.segments[i].end_ns - trace.segments[i].start_ns;
    const double span = jitter_fraction * std::min( left_len, right_len );
    bounds[i] += gen.uniform( -span, span );
  }
  /* repair: boundaries cannot cross for fraction < 0.5, but guard numerics */
  std::sort( bounds.begin(), bounds.end() );

  power_trace out;
  for ( size_t i = 0; i < trace.segments.size(); ++i )
    out.segments.push_back( { bounds[i], bounds[i + 1], trace.segments[i].on } );
  out.validate();
  return out;
}

inline void write_trace_csv( std::ostream& os, const power_trace& trace )
{
  os << "start_ns,end_ns,state\n";
  char buf[96];
  for ( const auto& s : trace.segments )
  {
    std::snprintf( buf, sizeof buf, "%.9f,%.9f,%s\n", s.start_ns, s.end_ns, s.on ? "ON" : "OFF" );
    os << buf;
  }
}

inline power_trace read_trace_csv( std::istream& in )
{
  power_trace trace;
  std::string line;
  int line_no = 0;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( line.empty() || line == "start_ns,end_ns,state" )
      continue;
    power_segment s;
    char state[8] = { 0 };
    if ( std::sscanf( line.c_str(), "%lf,%lf,%7s", &s.start_ns, &s.end_ns, state ) != 3 )
      throw parse_error( line_no, 1, "expected 'start_ns,end_ns,state'" );
    const std::string st = state;
    if ( st != "ON" && st != "OFF" )
      throw parse_error( line_no, 1, "state must be ON or OFF" );
    s.on = st == "ON";
    trace.segments.push_back( s );
  }
  trace.validate();
  return trace;
}

struct sim_result
{
  uint64_t cycles_attempted = 0;
  uint64_t cycles_committed = 0;
  uint64_t losses = 0;      /* (failure, endpoint-pair) window hits */
  uint64_t lost_cycles = 0; /* cycles destroyed by at least one hit */
  uint64_t reboots = 0;     /* power-up events after execution started */
  double forward_progress = 0.0;
  uint64_t seed = 0;
  std::vector<std::pair<uint64_t, bit_vector>> committed_outputs; /* filled when recording */
};

/*! \brief Cycles that fit entirely inside the ON segments of a trace. */
inline uint64_t max_committable_cycles( const power_trace& trace, double period_ns )
{
  uint64_t n = 0;
  for ( const auto& s : trace.segments )
  {
    if ( s.on )
      n += static_cast<uint64_t>( std::floor( ( s.end_ns - s.start_ns ) / period_ns ) );
  }
  return n;
}

namespace detail
{

/*! \brief Core intermittent loop against precomputed sensitive windows. */
inline sim_result run_intermittent_core( const netlist& n, const std::vector<double>& window_ts_ns, double period_ns,
                                         const power_trace& trace, const std::vector<bit_vector>& workload,
                                         uint64_t seed, bool record_outputs )
{
  if ( !( period_ns > 0.0 ) )
    throw std::invalid_argument( "run_intermittent: clock period must be > 0" );
  trace.validate();

  simulator sim( n );
  sim.reset_zero();

  sim_result res;
  res.seed = seed;
  size_t w = 0;
  bool started = false;

  for ( size_t si = 0; si < trace.segments.size(); ++si )
  {
    const auto& seg = trace.segments[si];
    if ( !seg.on || w >= workload.size() )
      continue;
    if ( started )
      ++res.reboots;

    double t = seg.start_ns;
    while ( w < workload.size() && t + period_ns <= seg.end_ns )
    {
      started = true;
      ++res.cycles_attempted;
      bit_vector out = sim.step( workload[w] );
      ++res.cycles_committed;
      if ( record_outputs )
        res.committed_outputs.emplace_back( w, std::move( out ) );
      ++w;
      t += period_ns;
    }
    if ( w < workload.size() && t < seg.end_ns )
    {
      /* partial cycle cut by the end of the segment */
      started = true;
      ++res.cycles_attempted;
      const bool failure = si + 1 < trace.segments.size(); /* horizon truncation is not a failure */
      if ( failure )
      {
        const double t_commit = t + period_ns;
        const double t_fail = seg.end_ns;
        uint64_t hits = 0;
        for ( double ts : window_ts_ns )
        {
          if ( t_fail >= t_commit - ts )
            ++hits;
        }
        res.losses += hits;
        if ( hits > 0 )
          ++res.lost_cycles;
      }
      /* cycle discarded; NV state keeps the last committed values and the
         same workload vector is re-executed after power returns */
    }
  }

  res.forward_progress = res.cycles_attempted == 0
                             ? ( workload.empty() ? 1.0 : 0.0 )
                             : static_cast<double>( res.cycles_committed ) / static_cast<double>( res.cycles_attempted );
  return res;
}

inline std::vector<double> sensitive_windows( const netlist& n, const tech_params& tech )
{
  const dvt_report rep = sensitive_paths( n, tech );
  std::vector<double> ts;
  ts.reserve( rep.paths.size() );
  for ( const auto& p : rep.paths )
    ts.push_back( p.t_s_ns );
  return ts;
}

} // namespace detail

/*! \brief Executes a workload under an intermittent power trace. */
inline sim_result run_intermittent( const netlist& n, const tech_params& tech, const power_trace& trace,
                                    const std::vector<bit_vector>& workload, uint64_t seed,
                                    bool record_outputs = false )
{
  return detail::run_intermittent_core( n, detail::sensitive_windows( n, tech ), tech.clock_period_ns, trace,
                                        workload, seed, record_outputs );
}

struct monte_carlo_config
{
  uint64_t trials = 10000;
  double jitter_fraction = 0.2;
  uint64_t master_seed = 1;
  unsigned jobs = 1;
};

struct monte_carlo_result
{
  std::vector<sim_result> trials;
  double mean_losses = 0.0;
  double mean_lost_cycles = 0.0;
  double mean_forward_progress = 0.0;
};

/*! \brief Runs `trials` jittered-trace simulations; trial i uses the
 * counter-mode seed derive(master, i), so results do not depend on the
 * number of worker threads.
 */
inline monte_carlo_result run_monte_carlo( const netlist& n, const tech_params& tech, const power_trace& base_trace,
                                           const std::vector<bit_vector>& workload, const monte_carlo_config& cfg )
{
  const std::vector<double> windows = detail::sensitive_windows( n, tech );
  monte_carlo_result mc;
  mc.trials.resize( cfg.trials );

  auto run_range = [&]( uint64_t begin, uint64_t end ) {
    for ( uint64_t i = begin; i < end; ++i )
    {
      const uint64_t trial_seed = rng::derive( cfg.master_seed, i );
      const power_trace tr = jittered_trace( base_trace, cfg.jitter_fraction, trial_seed );
      mc.trials[i] =
          detail::run_intermittent_core( n, windows, tech.clock_period_ns, tr, workload, trial_seed, false );
    }
  };

  const unsigned jobs = std::max( 1u, cfg.jobs );
  if ( jobs == 1 || cfg.trials < 2 * jobs )
  {
    run_range( 0, cfg.trials );
  }
  else
  {
    std::vector<std::thread> workers;
    const uint64_t chunk = ( cfg.trials + jobs - 1 ) / jobs;
    for ( unsigned j = 0; j < jobs; ++j )
    {
      const uint64_t b = j * chunk;
      const uint64_t e = std::min<uint64_t>( b + chunk, cfg.trials );
      if ( b < e )
        workers.emplace_back( run_range, b, e );
    }
    for ( auto& th : workers )
      th.join();
  }

  for ( const auto& t : mc.trials )
  {
    mc.mean_losses += static_cast<double>( t.losses );
    mc.mean_lost_cycles += static_cast<double>( t.lost_cycles );
    mc.mean_forward_progress += t.forward_progress;
  }
  if ( cfg.trials > 0 )
  {
    mc.mean_losses /= static_cast<double>( cfg.trials );
    mc.mean_lost_cycles /= static_cast<double>( cfg.trials );
    mc.mean_forward_progress /= static_cast<double>( cfg.trials );
  }
  return mc;
}

/*! \brief Percentile bootstrap confidence interval for the mean of `values`. */
inline std::pair<double, double> bootstrap_mean_ci( const std::vector<double>& values, double confidence = 0.95,
                                                    size_t resamples = 1000, uint64_t seed = 12345 )
{
  if ( values.empty() )
    return { 0.0, 0.0 };
  rng gen( seed );
  std::vector<double> means( resamples );
  for ( auto& m : means )
  {
    double sum = 0.0;
    for ( size_t i = 0; i < values.size(); ++i )
      sum += values[gen.next_below( values.size() )];
    m = sum / static_cast<double>( values.size() );
  }
  std::sort( means.begin(), means.end() );
  const double tail = ( 1.0 - confidence ) / 2.0;
  const auto lo_idx = static_cast<size_t>( std::floor( tail * static_cast<double>( resamples - 1 ) ) );
  const auto hi_idx = static_cast<size_t>( std::ceil( ( 1.0 - tail ) * static_cast<double>( resamples - 1 ) ) );
  return { means[lo_idx], means[hi_idx] };
}

} // namespace nvclust
