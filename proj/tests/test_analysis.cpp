#include <catch2/catch.hpp>

#include <cmath>

#include <nvclust/analysis.hpp>
#include <nvclust/bench_io.hpp>
#include <nvclust/clustering.hpp>
#include <nvclust/reports.hpp>
#include <nvclust/tech.hpp>

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

const pg_library& lib()
{
  static const pg_library l = pg_library::build();
  return l;
}

/* uniform hand-made technology for exact-value tests */
tech_params flat_tech( double gate_delay1, double gate_delay2, double t_rd_in, double t_wr_ff )
{
  tech_params t = default_tech();
  for ( gate_kind k : all_gate_kinds )
    t.gates[k] = gate_cost{ 1.0, 1.0, gate_delay1 };
  t.gates[gate_kind::OR].delay_ns = gate_delay2;
  t.input_reg = ff_cost{ 0, 0, 0, t_rd_in, 0 };
  t.output_reg = ff_cost{ 0, 0, 0.05, 0.0, 0 };
  t.nvff = ff_cost{ 2.0, 1.0, t_wr_ff, 0.1, 0 };
  t.leff = t.nvff;
  t.leff_per_leaf = ff_cost{};
  t.dff = t.nvff;
  return t;
}
} // namespace

TEST_CASE( "tech file parses and carries the device section" )
{
  const tech_params& t = default_tech();
  CHECK( t.clock_period_ns == 10.0 );
  CHECK( t.gate( gate_kind::NOR ).delay_ns == 0.25 );
  CHECK( t.nvff.t_wr_ns == 1.8 );
  CHECK( t.mtj.delta_kt == 40.0 );
  CHECK( t.physics.alpha == 0.02 );
  CHECK( t.ff( ff_kind::LEFF, 3 ).area_um2 == Approx( 7.0 + 3 * 0.2 ) );
}

TEST_CASE( "tech file rejects unknown keys, bad syntax and negatives" )
{
  std::istringstream bad1( "gate.FOO.area = 1\n" );
  CHECK_THROWS_AS( parse_tech( bad1 ), parse_error );
  std::istringstream bad2( "clock.period 10\n" );
  CHECK_THROWS_AS( parse_tech( bad2 ), parse_error );
  std::istringstream bad3( "clock.period = -1\n" );
  CHECK_THROWS_AS( parse_tech( bad3 ), parse_error );
  std::istringstream incomplete( "clock.period = 10\n" );
  CHECK_THROWS_AS( parse_tech( incomplete ), validation_error );
}

TEST_CASE( "cost: two gates in series between registers" )
{
  /* in -> g1(1ns) -> g2(2ns) -> ff, with t_rd(in)=0.5 and t_wr(ff)=1 */
  const netlist n = parse_bench_string( "INPUT(a)\nOUTPUT(q)\n"
                                        "q = DFF(g2)\ng1 = NOT(a)\ng2 = OR(g1, a)\n" );
  tech_params t = flat_tech( 1.0, 2.0, 0.5, 1.0 );
  t.output_reg.t_wr_ns = 0.0; /* isolate the register-to-register path */
  const cost_report rep = cost( n, t );
  CHECK( rep.delay_ns == Approx( 0.5 + 1.0 + 2.0 + 1.0 ) );
  CHECK( rep.energy_uw_ns == rep.power_uw * rep.delay_ns );
}

TEST_CASE( "cost of an empty netlist is all zero" )
{
  netlist n;
  n.set_name( "nil" );
  n.validate();
  const cost_report rep = cost( n, default_tech() );
  CHECK( rep.area_um2 == 0.0 );
  CHECK( rep.power_uw == 0.0 );
  CHECK( rep.delay_ns == 0.0 );
  CHECK( rep.energy_uw_ns == 0.0 );
}

TEST_CASE( "cost rejects unpriced gate kinds" )
{
  const netlist n = parse_bench_string( "INPUT(a)\nINPUT(b)\nOUTPUT(c)\nc = XOR(a, b)\n" );
  tech_params t = default_tech();
  t.gates.erase( gate_kind::XOR );
  CHECK_THROWS_AS( cost( n, t ), validation_error );
}

TEST_CASE( "s27: clustered design dominates the all-NVFF baseline" )
{
  const netlist n = read_bench_file( bench_path( "s27.bench" ) );
  const netlist baseline = nvff_baseline( n );
  const netlist clustered = apply_plan( n, nv_cluster( n, lib() ) );

  const cost_report cb = cost( baseline, default_tech() );
  const cost_report cc = cost( clustered, default_tech() );
  CHECK( cc.area_um2 <= cb.area_um2 );
  CHECK( cc.power_uw <= cb.power_uw );
  CHECK( cc.delay_ns <= cb.delay_ns );
  CHECK( cc.energy_uw_ns <= cb.energy_uw_ns );

  const dvt_report db = sensitive_paths( baseline, default_tech() );
  const dvt_report dc = sensitive_paths( clustered, default_tech() );
  CHECK( dc.dvt_ns < db.dvt_ns );
}

TEST_CASE( "sensitive path: single path matches the formula" )
{
  /* in -> gate(2ns) -> ff; ff.q feeds nothing */
  const netlist n = parse_bench_string( "INPUT(a)\nINPUT(b)\nOUTPUT(a)\nq = NVFF(g)\ng = OR(a, b)\n" );
  tech_params t = flat_tech( 1.0, 2.0, 0.5, 1.0 );
  t.output_reg.t_wr_ns = 0.0;
  t.input_reg.t_rd_ns = 0.5;
  const dvt_report rep = sensitive_paths( n, t );

  bool found = false;
  for ( const auto& p : rep.paths )
  {
    if ( p.source == "in:a" && p.destination == "q" )
    {
      found = true;
      CHECK( p.t_c_ns == Approx( 2.0 ) );
      CHECK( p.t_s_ns == Approx( 1.0 + 0.5 + 2.0 ).epsilon( 1e-12 ) );
    }
  }
  CHECK( found );

  double sum = 0.0;
  for ( const auto& p : rep.paths )
    sum += p.t_s_ns;
  CHECK( rep.dvt_ns == Approx( sum ).epsilon( 1e-12 ) );
}

TEST_CASE( "sensitive paths reject volatile designs" )
{
  const netlist n = read_bench_file( bench_path( "s27.bench" ) );
  CHECK_THROWS_AS( sensitive_paths( n, default_tech() ), validation_error );
}

TEST_CASE( "absorbing a gate removes exactly its delay from the pair" )
{
  /* one cone: in -> NOR(2ns) -> ff */
  const netlist n = parse_bench_string( "INPUT(a)\nINPUT(b)\nOUTPUT(a)\nq = DFF(g)\ng = NOR(a, b)\n" );
  tech_params t = flat_tech( 1.0, 2.0, 0.5, 1.0 );
  t.gates[gate_kind::NOR].delay_ns = 2.0;

  const netlist baseline = nvff_baseline( n );
  const netlist clustered = apply_plan( n, nv_cluster( n, lib() ) );
  REQUIRE( clustered.gates().empty() );

  const dvt_report db = sensitive_paths( baseline, t );
  const dvt_report dc = sensitive_paths( clustered, t );

  auto pair_ts = [&]( const dvt_report& r, const std::string& src ) {
    for ( const auto& p : r.paths )
    {
      if ( p.source == src && p.destination == "q" )
        return p.t_s_ns;
    }
    return -1.0;
  };
  CHECK( pair_ts( db, "in:a" ) == Approx( pair_ts( dc, "in:a" ) + 2.0 ) );
  CHECK( db.dvt_ns - dc.dvt_ns == Approx( 2.0 * 2.0 ) ); /* two sources, both lose the gate */
}

TEST_CASE( "t_C agrees with the recursive longest-path oracle on random netlists" )
{
  for ( uint64_t seed = 0; seed < 30; ++seed )
  {
    const netlist n = oracle::random_netlist( seed, 4, 4, 12 );
    const netlist nv = nvff_baseline( n );
    const dvt_report rep = sensitive_paths( nv, default_tech() );
    double sum = 0.0;
    for ( const auto& p : rep.paths )
    {
      const std::string src_net = p.source.rfind( "in:", 0 ) == 0 ? p.source.substr( 3 ) : p.source;
      double best = -1e300;
      const flip_flop* ff = nv.find_ff( p.destination );
      std::map<std::string, double> memo;
      if ( ff != nullptr )
      {
        best = oracle::longest_path_from( nv, default_tech(), src_net, ff->d, &memo );
      }
      else
      {
        best = oracle::longest_path_from( nv, default_tech(), src_net, p.destination.substr( 4 ), &memo );
      }
      CHECK( p.t_c_ns == Approx( best ).epsilon( 1e-12 ) );
      sum += p.t_s_ns;
    }
    CHECK( rep.dvt_ns == Approx( sum ).epsilon( 1e-12 ) );
  }
}

TEST_CASE( "clustering never increases DVT when LEFF timing equals NVFF timing" )
{
  tech_params t = default_tech(); /* shipped defaults keep them equal */
  for ( uint64_t seed = 40; seed < 60; ++seed )
  {
    const netlist n = oracle::random_netlist( seed, 5, 5, 16 );
    const netlist baseline = nvff_baseline( n );
    const netlist clustered = apply_plan( n, nv_cluster( n, lib() ) );
    CHECK( sensitive_paths( clustered, t ).dvt_ns <= sensitive_paths( baseline, t ).dvt_ns + 1e-9 );
  }
}

TEST_CASE( "compare: power and delay improvements compose multiplicatively into energy" )
{
  cost_report base{ 100.0, 100.0, 100.0, 100.0 * 100.0 };
  cost_report cand{ 85.0, 78.0, 86.0, 78.0 * 86.0 };
  const improvement imp = compare( base, cand );
  CHECK( imp.power_pct == Approx( 22.0 ) );
  CHECK( imp.delay_pct == Approx( 14.0 ) );
  CHECK( imp.energy_pct == Approx( 32.92 ).margin( 0.5 ) );
  /* energy improvement is exactly 1-(1-p)(1-d) */
  const double expect = 100.0 * ( 1.0 - ( 1.0 - 0.22 ) * ( 1.0 - 0.14 ) );
  CHECK( imp.energy_pct == Approx( expect ).epsilon( 1e-12 ) );
}

TEST_CASE( "compare: identity and sign conventions" )
{
  cost_report base{ 10.0, 5.0, 2.0, 10.0 };
  const improvement zero = compare( base, base );
  CHECK( zero.area_pct == 0.0 );
  CHECK( zero.power_pct == 0.0 );
  CHECK( zero.delay_pct == 0.0 );
  CHECK( zero.energy_pct == 0.0 );

  cost_report worse = base;
  worse.delay_ns = 3.0;
  CHECK( compare( base, worse ).delay_pct == Approx( -50.0 ) );

  cost_report zero_base{ 0.0, 1.0, 1.0, 1.0 };
  CHECK_THROWS_AS( compare( zero_base, base ), std::invalid_argument );
}

TEST_CASE( "no accepted cones and equal LEFF/NVFF costs give zero improvements" )
{
  /* chained flip-flops: nothing to cluster */
  const netlist n = parse_bench_string( "INPUT(a)\nOUTPUT(o)\n"
                                        "q1 = DFF(a)\nq2 = DFF(q1)\no = BUFF(q2)\n" );
  report_header header;
  header.tech_file = NVCLUST_TECH_FILE;
  header.tech_hash = file_hash_hex( NVCLUST_TECH_FILE );
  const analyze_report rep = analyze_design( n, default_tech(), lib(), 5, header );
  CHECK( rep.num_leff == 0 );
  CHECK( rep.num_nvff == 2 );
  CHECK( rep.impr.area_pct == 0.0 );
  CHECK( rep.impr.power_pct == 0.0 );
  CHECK( rep.impr.delay_pct == 0.0 );
  CHECK( rep.impr.energy_pct == 0.0 );
  CHECK( rep.dvt_impr_pct == 0.0 );
}

TEST_CASE( "analyze_design report is internally consistent" )
{
  const netlist n = read_bench_file( bench_path( "s27.bench" ) );
  report_header header;
  header.tech_file = NVCLUST_TECH_FILE;
  header.tech_hash = file_hash_hex( NVCLUST_TECH_FILE );
  const analyze_report rep = analyze_design( n, default_tech(), lib(), 5, header );

  CHECK( rep.num_leff == 2 );
  CHECK( rep.num_nvff == 1 );
  CHECK( rep.num_gates_clustered == 8 );

  const double p = rep.impr.power_pct / 100.0, d = rep.impr.delay_pct / 100.0;
  CHECK( rep.impr.energy_pct / 100.0 == Approx( 1.0 - ( 1.0 - p ) * ( 1.0 - d ) ).epsilon( 1e-9 ) );

  const auto j = to_json( rep );
  CHECK( j["header"]["tool"] == "nvclust" );
  CHECK( j["improvement_pct"].contains( "dvt" ) );
  const std::string csv = sweep_csv_row( rep );
  CHECK( csv.rfind( "s27,4,1,3,10,2,1,", 0 ) == 0 );
}
