#include <catch2/catch.hpp>

#include <cmath>
#include <sstream>

#include <nvclust/bench_io.hpp>
#include <nvclust/clustering.hpp>
#include <nvclust/intermit.hpp>
#include <nvclust/reports.hpp>

#include "oracles.hpp"

using namespace nvclust;

namespace
{
std::string bench_path( const std::string& name )
{
  return std::string( NVCLUST_BENCH_DIR ) + "/" + name;
}

const tech_params& default_tech()
{
  static const tech_params t = read_tech_file( NVCLUST_TECH_FILE );
  return t;
}

harvester_model table_model()
{
  harvester_model m;
  m.capacitance_nf = 470.0;
  m.harvest_current_ua = 10.0;
  m.load_current_ua = 110.0;
  m.v_on = 4.5;
  m.v_off = 2.0;
  m.v_max = 5.0;
  return m;
}

harvester_model desk_model()
{
  harvester_model m;
  m.capacitance_nf = 0.47;
  m.harvest_current_ua = 100.0;
  m.load_current_ua = 600.0;
  m.v_on = 4.5;
  m.v_off = 2.0;
  m.v_max = 5.0;
  return m;
}

/* single NV pair with a controllable window */
netlist one_path_netlist()
{
  return parse_bench_string( "INPUT(a)\nINPUT(b)\nOUTPUT(a)\nq = NVFF(g)\ng = OR(a, b)\n", "onepath" );
}

tech_params one_path_tech( double t_wr, double t_rd, double t_c )
{
  tech_params t = default_tech();
  for ( gate_kind k : all_gate_kinds )
    t.gates[k].delay_ns = t_c;
  t.nvff.t_wr_ns = t_wr;
  t.nvff.t_rd_ns = 0.0;
  t.leff = t.nvff;
  t.input_reg = ff_cost{ 0, 0, 0, t_rd, 0 };
  t.output_reg = ff_cost{ 0, 0, 0, 0, 0 };
  t.clock_period_ns = 10.0;
  return t;
}
} // namespace

TEST_CASE( "trace: reference parameters give the closed-form burst length" )
{
  const power_trace tr = generate_trace( table_model(), 5e8 );
  tr.validate();
  /* charge 0 -> 4.5 V at 10 uA: 470n * 4.5 / 10u s = 211.5 ms */
  CHECK( tr.segments[0].on == false );
  CHECK( tr.segments[0].end_ns == Approx( 2.115e8 ) );
  /* ON burst: 470n * 2.5 / 100u = 11.75 ms */
  REQUIRE( tr.segments.size() >= 2 );
  CHECK( tr.segments[1].on == true );
  CHECK( tr.segments[1].end_ns - tr.segments[1].start_ns == Approx( 1.175e7 ) );
}

TEST_CASE( "trace: harvest >= load never fails" )
{
  harvester_model m = table_model();
  m.harvest_current_ua = 120.0;
  const power_trace tr = generate_trace( m, 1e9 );
  REQUIRE( tr.segments.size() == 2 );
  CHECK_FALSE( tr.segments[0].on );
  CHECK( tr.segments[1].on );
  CHECK( tr.segments[1].end_ns == 1e9 );
}

TEST_CASE( "trace: horizon shorter than the first charge gives a single OFF segment" )
{
  const power_trace tr = generate_trace( table_model(), 1e6 );
  REQUIRE( tr.segments.size() == 1 );
  CHECK_FALSE( tr.segments[0].on );
}

TEST_CASE( "trace: zero harvest never powers on" )
{
  harvester_model m = table_model();
  m.harvest_current_ua = 0.0;
  const power_trace tr = generate_trace( m, 1e6 );
  REQUIRE( tr.segments.size() == 1 );
  CHECK_FALSE( tr.segments[0].on );
}

TEST_CASE( "trace: invalid models are rejected" )
{
  harvester_model m = table_model();
  m.v_off = 5.0;
  CHECK_THROWS_AS( generate_trace( m, 1e6 ), std::invalid_argument );
  CHECK_THROWS_AS( generate_trace( table_model(), 0.0 ), std::invalid_argument );
}

TEST_CASE( "trace csv round trip" )
{
  const power_trace tr = generate_trace( desk_model(), 1e5 );
  std::ostringstream os;
  write_trace_csv( os, tr );
  std::istringstream is( os.str() );
  const power_trace back = read_trace_csv( is );
  REQUIRE( back.segments.size() == tr.segments.size() );
  for ( size_t i = 0; i < tr.segments.size(); ++i )
  {
    CHECK( back.segments[i].on == tr.segments[i].on );
    CHECK( back.segments[i].start_ns == Approx( tr.segments[i].start_ns ) );
    CHECK( back.segments[i].end_ns == Approx( tr.segments[i].end_ns ) );
  }
}

TEST_CASE( "jitter: zero fraction is the identity" )
{
  const power_trace tr = generate_trace( desk_model(), 1e5 );
  const power_trace j = jittered_trace( tr, 0.0, 42 );
  REQUIRE( j.segments.size() == tr.segments.size() );
  for ( size_t i = 0; i < tr.segments.size(); ++i )
  {
    CHECK( j.segments[i].start_ns == tr.segments[i].start_ns );
    CHECK( j.segments[i].end_ns == tr.segments[i].end_ns );
  }
}

TEST_CASE( "jitter: deterministic per seed, different across seeds" )
{
  const power_trace tr = generate_trace( desk_model(), 2e5 );
  const power_trace a = jittered_trace( tr, 0.2, 7 );
  const power_trace b = jittered_trace( tr, 0.2, 7 );
  const power_trace c = jittered_trace( tr, 0.2, 8 );
  REQUIRE( a.segments.size() == b.segments.size() );
  bool all_equal_ab = true, all_equal_ac = true;
  for ( size_t i = 0; i < a.segments.size(); ++i )
  {
    all_equal_ab = all_equal_ab && a.segments[i].start_ns == b.segments[i].start_ns;
    all_equal_ac = all_equal_ac && a.segments[i].start_ns == c.segments[i].start_ns;
  }
  CHECK( all_equal_ab );
  CHECK_FALSE( all_equal_ac );
  CHECK( a.horizon_ns() == tr.horizon_ns() );
}

TEST_CASE( "jitter: boundary displacements look uniform" )
{
  /* many segments: scale the model down */
  harvester_model m = desk_model();
  const power_trace tr = generate_trace( m, 5e6 ); /* hundreds of segments */
  REQUIRE( tr.segments.size() > 300 );
  const double fraction = 0.2;
  const power_trace j = jittered_trace( tr, fraction, 99 );

  /* normalized displacement of each interior boundary in [-1, 1] */
  std::vector<double> disp;
  for ( size_t i = 1; i < tr.segments.size(); ++i )
  {
    const double left = tr.segments[i - 1].end_ns - tr.segments[i - 1].start_ns;
    const double right = tr.segments[i].end_ns - tr.segments[i].start_ns;
    const double span = fraction * std::min( left, right );
    disp.push_back( ( j.segments[i].start_ns - tr.segments[i].start_ns ) / span );
  }
  /* chi-square over 8 bins at a very generous threshold */
  const int bins = 8;
  std::vector<int> hist( bins, 0 );
  for ( double d : disp )
  {
    REQUIRE( d >= -1.0 );
    REQUIRE( d <= 1.0 );
    int b = static_cast<int>( ( d + 1.0 ) / 2.0 * bins );
    b = std::min( b, bins - 1 );
    ++hist[b];
  }
  const double expect = static_cast<double>( disp.size() ) / bins;
  double chi2 = 0.0;
  for ( int h : hist )
    chi2 += ( h - expect ) * ( h - expect ) / expect;
  CHECK( chi2 < 40.0 ); /* df=7; 40 is far beyond the 99.9% quantile (24.3) */
}

TEST_CASE( "jitter rejects out-of-range fractions" )
{
  const power_trace tr = generate_trace( desk_model(), 1e5 );
  CHECK_THROWS_AS( jittered_trace( tr, 0.5, 1 ), std::invalid_argument );
  CHECK_THROWS_AS( jittered_trace( tr, -0.1, 1 ), std::invalid_argument );
}

TEST_CASE( "intermittent: continuous power commits everything" )
{
  power_trace tr;
  tr.segments.push_back( { 0.0, 1e4, true } );
  const netlist n = one_path_netlist();
  const tech_params t = one_path_tech( 1.0, 0.5, 2.0 );
  const auto workload = random_vectors( 2, 100, 5 );
  const sim_result res = run_intermittent( n, t, tr, workload, 5 );
  CHECK( res.cycles_attempted == 100 );
  CHECK( res.cycles_committed == 100 );
  CHECK( res.losses == 0 );
  CHECK( res.lost_cycles == 0 );
  CHECK( res.reboots == 0 );
  CHECK( res.forward_progress == 1.0 );
}

TEST_CASE( "intermittent: failure inside the window loses exactly the in-flight cycle" )
{
  const netlist n = one_path_netlist();
  /* windows: (in:a,q) and (in:b,q): t_s = 1+0.5+2 = 3.5; (in:a,out:a): 0.5 */
  const tech_params t = one_path_tech( 1.0, 0.5, 2.0 );
  const auto workload = random_vectors( 2, 10, 5 );

  /* period 10; first cycle commits at 10; second is cut at 17:
     commit would be 20, windows [16.5, 20) x2 and [19.5, 20) -> 2 hits */
  power_trace tr;
  tr.segments.push_back( { 0.0, 17.0, true } );
  tr.segments.push_back( { 17.0, 30.0, false } );
  const sim_result res = run_intermittent( n, t, tr, workload, 1 );
  CHECK( res.cycles_attempted == 2 );
  CHECK( res.cycles_committed == 1 );
  CHECK( res.losses == 2 );
  CHECK( res.lost_cycles == 1 );

  /* cut at 15.5: outside every window ([16.5,20) starts later) -> benign */
  power_trace tr2;
  tr2.segments.push_back( { 0.0, 15.5, true } );
  tr2.segments.push_back( { 15.5, 30.0, false } );
  const sim_result res2 = run_intermittent( n, t, tr2, workload, 1 );
  CHECK( res2.cycles_attempted == 2 );
  CHECK( res2.cycles_committed == 1 );
  CHECK( res2.losses == 0 );
  CHECK( res2.lost_cycles == 0 );
}

TEST_CASE( "intermittent: interrupted work is re-executed and committed outputs match continuous power" )
{
  const netlist n = one_path_netlist();
  const tech_params t = one_path_tech( 1.0, 0.5, 2.0 );
  const auto workload = random_vectors( 2, 6, 17 );

  power_trace tr;
  tr.segments.push_back( { 0.0, 25.0, true } );    /* 2 commits + 1 cut */
  tr.segments.push_back( { 25.0, 40.0, false } );
  tr.segments.push_back( { 40.0, 83.0, true } );   /* 4 commits + cut */
  tr.segments.push_back( { 83.0, 90.0, false } );
  tr.segments.push_back( { 90.0, 200.0, true } );

  const sim_result res = run_intermittent( n, t, tr, workload, 3, true );
  CHECK( res.cycles_committed == 6 );
  CHECK( res.cycles_attempted == 7 ); /* one interrupted cycle was re-executed */
  CHECK( res.reboots == 1 );          /* the third power-up has nothing left to run */

  const auto cont = simulate( n, workload );
  REQUIRE( res.committed_outputs.size() == 6 );
  for ( const auto& [idx, out] : res.committed_outputs )
    CHECK( out == cont.outputs[idx] );
  /* committed indices are exactly 0..5 in order */
  for ( size_t i = 0; i < res.committed_outputs.size(); ++i )
    CHECK( res.committed_outputs[i].first == i );
}

TEST_CASE( "intermittent: period longer than every ON segment makes zero progress" )
{
  const netlist n = one_path_netlist();
  const tech_params t = one_path_tech( 0.0, 0.0, 0.0 );
  const auto workload = random_vectors( 2, 5, 2 );
  power_trace tr;
  tr.segments.push_back( { 0.0, 4.0, true } );
  tr.segments.push_back( { 4.0, 8.0, false } );
  tr.segments.push_back( { 8.0, 12.0, true } );
  tr.segments.push_back( { 12.0, 16.0, false } );
  const sim_result res = run_intermittent( n, t, tr, workload, 2 );
  CHECK( res.cycles_committed == 0 );
  CHECK( res.forward_progress == 0.0 );
  CHECK( res.losses == 0 ); /* zero windows */
}

TEST_CASE( "intermittent: zero-DVT limit never loses" )
{
  const netlist n = one_path_netlist();
  const tech_params t = one_path_tech( 0.0, 0.0, 0.0 );
  const auto workload = random_vectors( 2, 500, 3 ); /* spans several bursts */
  const power_trace base = generate_trace( desk_model(), 1e5 );
  for ( uint64_t seed = 0; seed < 50; ++seed )
  {
    const power_trace tr = jittered_trace( base, 0.3, seed );
    const sim_result res = run_intermittent( n, t, tr, workload, seed );
    CHECK( res.losses == 0 );
    CHECK( res.lost_cycles == 0 );
  }
}

TEST_CASE( "intermittent: determinism" )
{
  const netlist n = one_path_netlist();
  const tech_params t = one_path_tech( 1.0, 0.5, 2.0 );
  const auto workload = random_vectors( 2, 40, 9 );
  const power_trace tr = jittered_trace( generate_trace( desk_model(), 1e5 ), 0.2, 77 );
  const sim_result a = run_intermittent( n, t, tr, workload, 9 );
  const sim_result b = run_intermittent( n, t, tr, workload, 9 );
  CHECK( a.cycles_attempted == b.cycles_attempted );
  CHECK( a.cycles_committed == b.cycles_committed );
  CHECK( a.losses == b.losses );
  CHECK( a.reboots == b.reboots );
  CHECK( a.forward_progress == b.forward_progress );
}

TEST_CASE( "intermittent: enlarging windows never reduces losses" )
{
  const netlist n = one_path_netlist();
  const auto workload = random_vectors( 2, 900, 13 ); /* enough to cross several failures */
  const power_trace base = generate_trace( desk_model(), 2e5 );
  std::vector<power_trace> traces;
  for ( uint64_t s = 0; s < 20; ++s )
    traces.push_back( jittered_trace( base, 0.25, s ) );

  uint64_t prev = 0;
  for ( double t_wr : { 0.0, 0.5, 1.0, 2.0, 4.0 } )
  {
    const tech_params t = one_path_tech( t_wr, 0.5, 2.0 );
    uint64_t total = 0;
    for ( const auto& tr : traces )
      total += run_intermittent( n, t, tr, workload, 1 ).losses;
    CHECK( total >= prev );
    prev = total;
  }
}

TEST_CASE( "monte carlo: reproducible and thread-count independent" )
{
  const netlist n = one_path_netlist();
  const tech_params t = one_path_tech( 1.0, 0.5, 2.0 );
  const auto workload = random_vectors( 2, 60, 21 );
  const power_trace base = generate_trace( desk_model(), 1e5 );

  monte_carlo_config cfg;
  cfg.trials = 200;
  cfg.jitter_fraction = 0.2;
  cfg.master_seed = 31;

  cfg.jobs = 1;
  const monte_carlo_result a = run_monte_carlo( n, t, base, workload, cfg );
  cfg.jobs = 4;
  const monte_carlo_result b = run_monte_carlo( n, t, base, workload, cfg );
  REQUIRE( a.trials.size() == b.trials.size() );
  for ( size_t i = 0; i < a.trials.size(); ++i )
  {
    CHECK( a.trials[i].losses == b.trials[i].losses );
    CHECK( a.trials[i].cycles_committed == b.trials[i].cycles_committed );
  }
  CHECK( a.mean_losses == b.mean_losses );
}

TEST_CASE( "monte carlo: clustered s27 never loses more than the all-NVFF baseline" )
{
  const netlist n = read_bench_file( bench_path( "s27.bench" ) );
  const pg_library lib = pg_library::build();
  const netlist baseline = nvff_baseline( n );
  const netlist clustered = apply_plan( n, nv_cluster( n, lib ) );

  const tech_params& t = default_tech();
  const power_trace base = generate_trace( desk_model(), 1e5 );
  const auto workload = random_vectors( n.inputs().size(), max_committable_cycles( base, t.clock_period_ns ), 55 );

  monte_carlo_config cfg;
  cfg.trials = 500;
  cfg.jitter_fraction = 0.2;
  cfg.master_seed = 55;

  const monte_carlo_result mb = run_monte_carlo( baseline, t, base, workload, cfg );
  const monte_carlo_result mc = run_monte_carlo( clustered, t, base, workload, cfg );

  /* commit instants are identical, clustered windows are subsets: the
     comparison holds per trial, not only in the mean */
  for ( size_t i = 0; i < cfg.trials; ++i )
    CHECK( mc.trials[i].losses <= mb.trials[i].losses );
  CHECK( mc.mean_losses <= mb.mean_losses );
}

TEST_CASE( "bootstrap confidence interval brackets the mean" )
{
  std::vector<double> values;
  rng gen( 5 );
  for ( int i = 0; i < 400; ++i )
    values.push_back( gen.uniform( 0.0, 10.0 ) );
  const auto [lo, hi] = bootstrap_mean_ci( values, 0.95, 500, 7 );
  double mean = 0.0;
  for ( double v : values )
    mean += v;
  mean /= static_cast<double>( values.size() );
  CHECK( lo <= mean );
  CHECK( hi >= mean );
  CHECK( hi - lo < 2.0 );
}
