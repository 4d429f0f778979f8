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
  \file device.hpp
  \brief SHE-MTJ macromodel scaling laws

  Closed-form device relations used by the analysis flow:

  - retention time follows the Neel-Arrhenius law tau0 * exp(delta),
  - critical current scales linearly with the energy barrier,
  - write energy scales with the square of the current,
  - the sense-amplifier reference resistance sits midway between the
    effective low and high read resistances of a cell.
*/

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nvclust
{

struct mtj_params
{
  double delta_kt = 40.0;      /* energy barrier, units of kT */
  double i_c_ref_ua = 50.0;    /* critical current at delta_ref */
  double delta_ref_kt = 40.0;
  double r_p_ohm = 2000.0;     /* parallel MTJ resistance */
  double r_ap_ohm = 4000.0;    /* anti-parallel MTJ resistance */
  double r_hm_ohm = 1000.0;    /* heavy-metal write path resistance */
  double t_wr_ns = 1.8;        /* write pulse width */
  double tau0_ns = 1.0;        /* attempt time */

  void validate() const
  {
    if ( delta_kt <= 0.0 )
      throw std::invalid_argument( "mtj_params: delta must be > 0" );
    if ( delta_ref_kt <= 0.0 )
      throw std::invalid_argument( "mtj_params: delta_ref must be > 0" );
    if ( !( r_ap_ohm > r_p_ohm && r_p_ohm > 0.0 ) )
      throw std::invalid_argument( "mtj_params: need r_ap > r_p > 0" );
    if ( r_hm_ohm < 0.0 )
      throw std::invalid_argument( "mtj_params: r_hm must be >= 0" );
    if ( tau0_ns <= 0.0 )
      throw std::invalid_argument( "mtj_params: tau0 must be > 0" );
    if ( t_wr_ns <= 0.0 )
      throw std::invalid_argument( "mtj_params: t_wr must be > 0" );
  }
};

/*! \brief Neel-Arrhenius retention time in seconds. */
inline double retention_time_s( double delta_kt, double tau0_ns )
{
  if ( !( delta_kt > 0.0 && delta_kt <= 100.0 ) )
  {
    throw std::invalid_argument( "retention_time: delta must be in (0, 100], got " + std::to_string( delta_kt ) );
  }
  if ( tau0_ns <= 0.0 )
  {
    throw std::invalid_argument( "retention_time: tau0 must be > 0" );
  }
  return tau0_ns * 1e-9 * std::exp( delta_kt );
}

/*! \brief Critical switching current at an energy barrier (I_C linear in delta). */
inline double critical_current_ua( const mtj_params& p, double delta_kt )
{
  if ( delta_kt <= 0.0 )
  {
    throw std::invalid_argument( "critical_current: delta must be > 0" );
  }
  p.validate();
  return p.i_c_ref_ua * delta_kt / p.delta_ref_kt;
}

/*! \brief Write-energy ratio when moving between two barriers (E proportional to I^2). */
inline double write_energy_ratio( double delta_from_kt, double delta_to_kt )
{
  if ( delta_from_kt <= 0.0 || delta_to_kt <= 0.0 )
  {
    throw std::invalid_argument( "write_energy_ratio: barriers must be > 0" );
  }
  const double r = delta_to_kt / delta_from_kt;
  return r * r;
}

struct resistance_window
{
  double r_low_ohm;
  double r_high_ohm;
  double r_ref_ohm;
};

/*! \brief Reference resistance of the sense path.
 *
 * r_low = (r_p + r_hm) / 2, r_high = (r_ap + r_hm) / 2 and the reference
 * sits midway: r_ref = (r_low + r_high) / 2.
 */
inline resistance_window reference_resistance( double r_p_pg_ohm, double r_ap_pg_ohm, double r_hm_ohm )
{
  if ( !( r_ap_pg_ohm > r_p_pg_ohm && r_p_pg_ohm > 0.0 ) )
  {
    throw std::invalid_argument( "reference_resistance: need r_ap > r_p > 0" );
  }
  if ( r_hm_ohm < 0.0 )
  {
    throw std::invalid_argument( "reference_resistance: r_hm must be >= 0" );
  }
  resistance_window w;
  w.r_low_ohm = ( r_p_pg_ohm + r_hm_ohm ) / 2.0;
  w.r_high_ohm = ( r_ap_pg_ohm + r_hm_ohm ) / 2.0;
  w.r_ref_ohm = ( w.r_low_ohm + w.r_high_ohm ) / 2.0;
  return w;
}

} // namespace nvclust
