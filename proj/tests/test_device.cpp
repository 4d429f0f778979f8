#include <catch2/catch.hpp>

#include <cmath>
#include <sstream>

#include <nvclust/device.hpp>
#include <nvclust/llg.hpp>

using namespace nvclust;

TEST_CASE( "retention time follows the Arrhenius law" )
{
  const double hour = 3600.0, day = 24 * hour, year = 365.25 * day;

  const double r40 = retention_time_s( 40.0, 1.0 );
  CHECK( r40 == Approx( 1e-9 * std::exp( 40.0 ) ) );
  CHECK( r40 >= year ); /* years of retention at 40 kT */

  const double r30 = retention_time_s( 30.0, 1.0 );
  CHECK( r30 == Approx( 1e-9 * std::exp( 30.0 ) ) );
  CHECK( r30 >= 1 * hour );
  CHECK( r30 <= 24 * hour ); /* a few hours at 30 kT */

  const double r35 = retention_time_s( 35.0, 1.0 );
  CHECK( r35 >= 1 * day );
  CHECK( r35 <= 60 * day ); /* days at 35 kT */

  CHECK_THROWS( retention_time_s( 0.0, 1.0 ) );
  CHECK_THROWS( retention_time_s( 120.0, 1.0 ) );
  CHECK_THROWS( retention_time_s( 40.0, 0.0 ) );
}

TEST_CASE( "retention time is strictly increasing in the barrier" )
{
  double prev = 0.0;
  for ( double delta = 5.0; delta <= 60.0; delta += 2.5 )
  {
    const double r = retention_time_s( delta, 1.0 );
    CHECK( r > prev );
    prev = r;
  }
}

TEST_CASE( "critical current scales linearly with the barrier" )
{
  mtj_params p;
  p.i_c_ref_ua = 50.0;
  p.delta_ref_kt = 40.0;

  CHECK( critical_current_ua( p, 30.0 ) == 0.75 * p.i_c_ref_ua ); /* 25% reduction */
  CHECK( critical_current_ua( p, 40.0 ) == p.i_c_ref_ua );
  CHECK( critical_current_ua( p, 20.0 ) == 0.5 * p.i_c_ref_ua );
  CHECK_THROWS( critical_current_ua( p, 0.0 ) );
}

TEST_CASE( "write energy ratio is quadratic in the current ratio" )
{
  CHECK( write_energy_ratio( 40.0, 30.0 ) == 0.5625 ); /* ~44% decrease */
  CHECK( write_energy_ratio( 40.0, 40.0 ) == 1.0 );
  CHECK( write_energy_ratio( 40.0, 20.0 ) == 0.25 );
  CHECK_THROWS( write_energy_ratio( 0.0, 30.0 ) );

  double prev = 0.0;
  for ( double to = 10.0; to <= 50.0; to += 5.0 )
  {
    const double r = write_energy_ratio( 40.0, to );
    CHECK( r > prev );
    prev = r;
  }
}

TEST_CASE( "reference resistance midpoints" )
{
  const auto w = reference_resistance( 2000.0, 4000.0, 1000.0 );
  CHECK( w.r_low_ohm == 1500.0 );
  CHECK( w.r_high_ohm == 2500.0 );
  CHECK( w.r_ref_ohm == 2000.0 );

  const auto w2 = reference_resistance( 1000.0, 3000.0, 0.0 );
  CHECK( w2.r_low_ohm == 500.0 );
  CHECK( w2.r_high_ohm == 1500.0 );
  CHECK( w2.r_ref_ohm == 1000.0 );

  CHECK_THROWS( reference_resistance( 3000.0, 2000.0, 0.0 ) );
  CHECK_THROWS( reference_resistance( 0.0, 2000.0, 0.0 ) );
}

namespace
{
mtj_params default_mtj()
{
  return {};
}

llg_physics default_physics()
{
  return {};
}
} // namespace

TEST_CASE( "llg: no drive means no switch and tight norm conservation" )
{
  const auto r = llg_switch( default_mtj(), default_physics(), 0.0, 20.0, 0.002 );
  CHECK_FALSE( r.switched );
  CHECK( r.max_norm_drift < 1e-8 );
  const auto& last = r.trajectory.back();
  CHECK( last.m.z > 0.9 ); /* stays in the initial well */
  CHECK( std::abs( norm( last.m ) - 1.0 ) < 1e-6 );
}

TEST_CASE( "llg: subcritical drive never switches over 100 ns" )
{
  const mtj_params p = default_mtj();
  const llg_physics ph = default_physics();
  const double ic = critical_current_ua( p, p.delta_kt );
  const auto r = llg_switch( p, ph, 0.5 * ic, 100.0, 0.002, false );
  CHECK_FALSE( r.switched );
}

TEST_CASE( "llg: overdrive switches, and harder drive switches faster" )
{
  const mtj_params p = default_mtj();
  const llg_physics ph = default_physics();
  const double ic = critical_current_ua( p, p.delta_kt );

  const auto r15 = llg_switch( p, ph, 1.5 * ic, 100.0, 0.002, false );
  const auto r20 = llg_switch( p, ph, 2.0 * ic, 100.0, 0.002, false );
  REQUIRE( r15.switched );
  REQUIRE( r20.switched );
  CHECK( r20.switching_time_ns < r15.switching_time_ns );
}

TEST_CASE( "llg: halving the step moves the switching time by < 1%" )
{
  const mtj_params p = default_mtj();
  const llg_physics ph = default_physics();
  const double ic = critical_current_ua( p, p.delta_kt );

  const auto coarse = llg_switch( p, ph, 2.0 * ic, 100.0, 0.002, false );
  const auto fine = llg_switch( p, ph, 2.0 * ic, 100.0, 0.001, false );
  REQUIRE( coarse.switched );
  REQUIRE( fine.switched );
  CHECK( std::abs( coarse.switching_time_ns - fine.switching_time_ns ) / fine.switching_time_ns < 0.01 );
}

TEST_CASE( "llg: simulated threshold calibrates to the configured critical current" )
{
  const mtj_params p = default_mtj();
  const llg_physics ph = default_physics();
  const double ic = critical_current_ua( p, p.delta_kt );
  const double threshold = llg_threshold_current_ua( p, ph, 400.0, 0.01, 0.2 * ic, 3.0 * ic );
  CHECK( std::abs( threshold - ic ) / ic < 0.10 );
}

TEST_CASE( "llg: precondition and blow-up detection" )
{
  CHECK_THROWS_AS( llg_switch( default_mtj(), default_physics(), 0.0, 10.0, 1.0 ), std::invalid_argument );

  llg_physics wild = default_physics();
  wild.h_k_a_per_m = 1e14; /* absurd rate: RK4 at this step must go non-finite */
  CHECK_THROWS_AS( llg_switch( default_mtj(), wild, 0.0, 1000.0, 10.0 - 1e-9 ), std::runtime_error );
}

TEST_CASE( "trajectory csv dump" )
{
  const auto r = llg_switch( default_mtj(), default_physics(), 0.0, 20.0, 0.1 );
  std::ostringstream os;
  write_trajectory_csv( os, r.trajectory );
  const std::string text = os.str();
  CHECK( text.rfind( "t,mx,my,mz\n", 0 ) == 0 );
  CHECK( std::count( text.begin(), text.end(), '\n' ) == static_cast<long>( r.trajectory.size() ) + 1 );
}
