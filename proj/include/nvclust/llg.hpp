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
  \file llg.hpp
  \brief Macrospin Landau-Lifshitz-Gilbert integrator

  Single-domain magnet with a uniaxial easy axis along z and a
  Slonczewski damping-like spin torque whose polarization is selected by
  the drive current sign.  Fixed-step classical RK4 with one
  renormalization of |m| per step; the pre-renormalization drift is
  tracked so tests can bound the integrator error.

  With the torque amplitude a_j = st_coeff * |I|, the linearized
  instability threshold of the +z well is a_j = alpha * h_k, so the
  default st_coeff is chosen as alpha * h_k / i_c_ref to make the
  simulated critical current land on the configured reference value.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "device.hpp"

namespace nvclust
{

struct vec3
{
  double x = 0.0, y = 0.0, z = 0.0;

  friend vec3 operator+( vec3 a, vec3 b ) { return { a.x + b.x, a.y + b.y, a.z + b.z }; }
  friend vec3 operator-( vec3 a, vec3 b ) { return { a.x - b.x, a.y - b.y, a.z - b.z }; }
  friend vec3 operator*( double s, vec3 v ) { return { s * v.x, s * v.y, s * v.z }; }
};

inline vec3 cross( vec3 a, vec3 b )
{
  return { a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x };
}

inline double dot( vec3 a, vec3 b ) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm( vec3 a ) { return std::sqrt( dot( a, a ) ); }

struct macrospin_state
{
  vec3 m;      /* unit magnetization */
  double t_ns; /* time */
};

struct llg_physics
{
  double alpha = 0.02;                   /* Gilbert damping */
  double h_k_a_per_m = 8.0e4;            /* uniaxial anisotropy field */
  double st_coeff_a_per_m_per_ua = 32.0; /* spin-torque field per microamp */
  double gamma_m_per_a_s = 2.211e5;      /* mu0 * gyromagnetic ratio */
  double initial_tilt_deg = 5.0;         /* thermal tilt of the start state */

  void validate() const
  {
    if ( alpha <= 0.0 || h_k_a_per_m <= 0.0 || st_coeff_a_per_m_per_ua <= 0.0 || gamma_m_per_a_s <= 0.0 )
      throw std::invalid_argument( "llg_physics: all coefficients must be > 0" );
    if ( initial_tilt_deg <= 0.0 || initial_tilt_deg >= 90.0 )
      throw std::invalid_argument( "llg_physics: initial tilt must be in (0, 90) degrees" );
  }
};

struct llg_result
{
  bool switched = false;
  double switching_time_ns = 0.0; /* valid iff switched */
  std::vector<macrospin_state> trajectory;
  double max_norm_drift = 0.0;    /* max | |m|-1 | before per-step renormalization */
};

/*! \brief Integrates one write attempt.
 *
 * \param current_ua  drive current; positive drives the magnet from +z
 *                    toward -z, negative the other way
 * \param duration_ns pulse length
 * \param step_ns     RK4 step; must satisfy step <= duration / 100
 *
 * The switch is recorded when the easy-axis component crosses zero and
 * later settles beyond 0.9 on the far side; the reported switching time
 * is the (linearly interpolated) first zero crossing.
 */
inline llg_result llg_switch( const mtj_params& params, const llg_physics& physics, double current_ua,
                              double duration_ns, double step_ns, bool record_trajectory = true )
{
  params.validate();
  physics.validate();
  if ( duration_ns <= 0.0 || step_ns <= 0.0 )
    throw std::invalid_argument( "llg_switch: duration and step must be > 0" );
  if ( step_ns > duration_ns / 100.0 )
    throw std::invalid_argument( "llg_switch: step must be <= duration / 100" );

  /* work in per-ns rates */
  const double gamma_eff = physics.gamma_m_per_a_s * 1e-9 / ( 1.0 + physics.alpha * physics.alpha );
  const double a_j = physics.st_coeff_a_per_m_per_ua * std::abs( current_ua );
  const vec3 pol = { 0.0, 0.0, current_ua >= 0.0 ? -1.0 : 1.0 };
  const bool driven = current_ua != 0.0;

  auto derivative = [&]( vec3 m ) -> vec3 {
    const vec3 h_eff = { 0.0, 0.0, physics.h_k_a_per_m * m.z };
    const vec3 m_x_h = cross( m, h_eff );
    vec3 d = -gamma_eff * ( m_x_h + physics.alpha * cross( m, m_x_h ) );
    if ( driven )
    {
      d = d - gamma_eff * a_j * cross( m, cross( m, pol ) );
    }
    return d;
  };

  constexpr double pi = 3.14159265358979323846;
  const double tilt = physics.initial_tilt_deg * pi / 180.0;
  vec3 m = { std::sin( tilt ), 0.0, std::cos( tilt ) };
  const double initial_sign = 1.0;

  llg_result result;
  if ( record_trajectory )
    result.trajectory.push_back( { m, 0.0 } );

  double t = 0.0;
  double prev_mz = m.z;
  double cross_time = -1.0;
  bool settled = false;

  const auto steps = static_cast<long long>( std::ceil( duration_ns / step_ns - 1e-12 ) );
  for ( long long i = 0; i < steps; ++i )
  {
    const double h = std::min( step_ns, duration_ns - t );
    const vec3 k1 = derivative( m );
    const vec3 k2 = derivative( m + 0.5 * h * k1 );
    const vec3 k3 = derivative( m + 0.5 * h * k2 );
    const vec3 k4 = derivative( m + h * k3 );
    m = m + ( h / 6.0 ) * ( k1 + 2.0 * k2 + 2.0 * k3 + k4 );
    t += h;

    const double len = norm( m );
    if ( !std::isfinite( len ) || len == 0.0 )
    {
      throw std::runtime_error( "llg_switch: non-finite state at t=" + std::to_string( t ) +
                                " ns (integration step too large)" );
    }
    result.max_norm_drift = std::max( result.max_norm_drift, std::abs( len - 1.0 ) );
    m = ( 1.0 / len ) * m;

    if ( record_trajectory )
      result.trajectory.push_back( { m, t } );

    if ( cross_time < 0.0 && initial_sign * m.z < 0.0 )
    {
      /* interpolate the zero crossing inside this step */
      const double frac = prev_mz / ( prev_mz - m.z );
      cross_time = ( t - h ) + frac * h;
    }
    if ( cross_time >= 0.0 && initial_sign * m.z < -0.9 )
      settled = true;
    prev_mz = m.z;
  }

  result.switched = settled;
  result.switching_time_ns = settled ? cross_time : 0.0;
  return result;
}

/*! \brief Bisects the switching threshold current over a fixed pulse window. */
inline double llg_threshold_current_ua( const mtj_params& params, const llg_physics& physics, double duration_ns,
                                        double step_ns, double lo_ua, double hi_ua, int iterations = 12 )
{
  for ( int i = 0; i < iterations; ++i )
  {
    const double mid = 0.5 * ( lo_ua + hi_ua );
    const bool sw = llg_switch( params, physics, mid, duration_ns, step_ns, false ).switched;
    ( sw ? hi_ua : lo_ua ) = mid;
  }
  return 0.5 * ( lo_ua + hi_ua );
}

inline void write_trajectory_csv( std::ostream& os, const std::vector<macrospin_state>& trajectory )
{
  os << "t,mx,my,mz\n";
  char buf[128];
  for ( const auto& s : trajectory )
  {
    std::snprintf( buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", s.t_ns, s.m.x, s.m.y, s.m.z );
    os << buf;
  }
}

} // namespace nvclust
