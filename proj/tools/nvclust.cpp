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

/*
 * nvclust command-line tool.
 *
 * Subcommands:
 *   validate   parse a .bench file and report element counts
 *   libdump    print the PG cell library, one line per cell
 *   synth      run the clustering pass; write plan + transformed netlist
 *   analyze    baseline (all-NVFF) vs clustered cost and DVT reports
 *   simulate   Monte-Carlo intermittent execution on jittered traces
 *   sweep      analyze many circuits, one CSV row each
 *
 * Exit codes: 0 success, 1 usage, 2 parse/validation error, 3 analysis
 * or simulation failure.
 */

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nvclust/nvclust.hpp>

namespace fs = std::filesystem;
using namespace nvclust;

namespace
{

struct common_options
{
  std::string bench_path;
  std::string tech_path = "tech/default.tech";
  std::string out_dir = "out";
  size_t max_leaves = 5;
  bool no_inversion = false;
};

struct sim_options
{
  uint64_t trials = 1000;
  uint64_t seed = 1;
  double horizon_ns = 1e5;
  double jitter = 0.2;
  unsigned jobs = 1;
  bool paired = false;
  /* desk-scale harvester defaults; pass the reference parameters
     (470 nF, 10/110 uA) with a longer horizon to reproduce the
     millisecond-scale envelope */
  double capacitance_nf = 0.47;
  double harvest_ua = 100.0;
  double load_ua = 600.0;
  double v_on = 4.5;
  double v_off = 2.0;
  double v_max = 5.0;
};

void write_file( const fs::path& path, const std::string& contents )
{
  std::ofstream os( path, std::ios::binary );
  if ( !os )
  {
    throw std::runtime_error( "cannot write '" + path.string() + "'" );
  }
  os << contents;
}

report_header make_header( const std::string& tech_path )
{
  report_header h;
  h.tech_file = tech_path;
  h.tech_hash = file_hash_hex( tech_path );
  return h;
}

int cmd_validate( const common_options& opt )
{
  const netlist n = read_bench_file( opt.bench_path );
  size_t dffs = 0, nvffs = 0, leffs = 0;
  for ( const auto& [id, ff] : n.ffs() )
  {
    if ( ff.kind == ff_kind::DFF )
      ++dffs;
    else if ( ff.kind == ff_kind::NVFF )
      ++nvffs;
    else
      ++leffs;
  }
  std::cout << "inputs=" << n.inputs().size() << " outputs=" << n.outputs().size() << " dffs=" << dffs;
  if ( nvffs + leffs > 0 )
    std::cout << " nvffs=" << nvffs << " leffs=" << leffs;
  std::cout << " gates=" << n.gates().size() << " OK" << std::endl;
  return 0;
}

int cmd_libdump( const common_options& opt, const std::string& out_file )
{
  const pg_library lib = pg_library::build( !opt.no_inversion );
  if ( out_file.empty() )
  {
    lib.dump( std::cout );
  }
  else
  {
    std::ostringstream os;
    lib.dump( os );
    write_file( out_file, os.str() );
  }
  return 0;
}

int cmd_synth( const common_options& opt )
{
  const netlist n = read_bench_file( opt.bench_path );
  const pg_library lib = pg_library::build( !opt.no_inversion );
  const cluster_plan plan = nv_cluster( n, lib, opt.max_leaves );
  const netlist transformed = apply_plan( n, plan );

  fs::create_directories( opt.out_dir );
  write_file( fs::path( opt.out_dir ) / ( n.name() + ".plan.txt" ), plan.dump_string() );
  write_file( fs::path( opt.out_dir ) / ( n.name() + ".nv.bench" ), emit_bench_string( transformed ) );

  std::cout << "circuit " << n.name() << ": leff=" << plan.accepted.size() << " nvff=" << plan.residual_nvffs.size()
            << " gates_removed=" << ( n.gates().size() - transformed.gates().size() ) << std::endl;
  return 0;
}

int cmd_analyze( const common_options& opt, bool csv_mode, bool with_paths )
{
  const netlist n = read_bench_file( opt.bench_path );
  const tech_params tech = read_tech_file( opt.tech_path );
  const pg_library lib = pg_library::build( !opt.no_inversion );
  const analyze_report rep = analyze_design( n, tech, lib, opt.max_leaves, make_header( opt.tech_path ) );

  fs::create_directories( opt.out_dir );
  write_file( fs::path( opt.out_dir ) / ( n.name() + ".report.json" ), to_json( rep, with_paths ).dump( 2 ) + "\n" );
  write_file( fs::path( opt.out_dir ) / ( n.name() + ".report.txt" ), to_text( rep ) );

  if ( csv_mode )
  {
    std::cout << sweep_csv_header() << "\n" << sweep_csv_row( rep ) << std::endl;
  }
  else
  {
    std::cout << to_text( rep );
  }
  return 0;
}

int cmd_simulate( const common_options& opt, const sim_options& sopt )
{
  const netlist parsed = read_bench_file( opt.bench_path );
  const tech_params tech = read_tech_file( opt.tech_path );
  const pg_library lib = pg_library::build( !opt.no_inversion );

  /* run synth implicitly when the design still carries volatile DFFs */
  netlist clustered = parsed;
  if ( parsed.num_dffs() > 0 )
  {
    const cluster_plan plan = nv_cluster( parsed, lib, opt.max_leaves );
    clustered = apply_plan( parsed, plan );
  }

  harvester_model model;
  model.capacitance_nf = sopt.capacitance_nf;
  model.harvest_current_ua = sopt.harvest_ua;
  model.load_current_ua = sopt.load_ua;
  model.v_on = sopt.v_on;
  model.v_off = sopt.v_off;
  model.v_max = sopt.v_max;

  const power_trace base_trace = generate_trace( model, sopt.horizon_ns );
  const uint64_t cycles = max_committable_cycles( base_trace, tech.clock_period_ns );
  const auto workload = random_vectors( parsed.inputs().size(), cycles, sopt.seed );

  monte_carlo_config cfg;
  cfg.trials = sopt.trials;
  cfg.jitter_fraction = sopt.jitter;
  cfg.master_seed = sopt.seed;
  cfg.jobs = sopt.jobs;

  const report_header header = make_header( opt.tech_path );
  fs::create_directories( opt.out_dir );
  {
    std::ostringstream os;
    write_trace_csv( os, base_trace );
    write_file( fs::path( opt.out_dir ) / ( parsed.name() + ".trace.csv" ), os.str() );
  }

  const monte_carlo_result mc_clustered = run_monte_carlo( clustered, tech, base_trace, workload, cfg );
  const double dvt_clustered = sensitive_paths( clustered, tech ).dvt_ns;
  nlohmann::json j = monte_carlo_to_json( header, parsed.name(), mc_clustered, cfg, model, sopt.horizon_ns,
                                          dvt_clustered, tech.clock_period_ns );

  if ( sopt.paired )
  {
    const netlist baseline = nvff_baseline( parsed );
    const monte_carlo_result mc_base = run_monte_carlo( baseline, tech, base_trace, workload, cfg );
    j["baseline"] = monte_carlo_to_json( header, parsed.name(), mc_base, cfg, model, sopt.horizon_ns,
                                         sensitive_paths( baseline, tech ).dvt_ns, tech.clock_period_ns, false );
    write_file( fs::path( opt.out_dir ) / ( parsed.name() + ".paired.csv" ), paired_csv( mc_base, mc_clustered ) );
    std::cout << "paired: mean_losses base=" << mc_base.mean_losses << " clustered=" << mc_clustered.mean_losses
              << "\n";
  }

  write_file( fs::path( opt.out_dir ) / ( parsed.name() + ".sim.json" ), j.dump( 2 ) + "\n" );
  std::cout << "circuit " << parsed.name() << ": trials=" << cfg.trials << " mean_losses=" << mc_clustered.mean_losses
            << " mean_progress=" << mc_clustered.mean_forward_progress << " dvt_ns=" << dvt_clustered << std::endl;
  return 0;
}

int cmd_sweep( const common_options& opt, std::vector<std::string> bench_paths, const std::string& dir,
               const std::string& out_file )
{
  if ( !dir.empty() )
  {
    std::vector<std::string> found;
    for ( const auto& entry : fs::directory_iterator( dir ) )
    {
      if ( entry.path().extension() == ".bench" )
        found.push_back( entry.path().string() );
    }
    std::sort( found.begin(), found.end() );
    bench_paths.insert( bench_paths.end(), found.begin(), found.end() );
  }
  if ( bench_paths.empty() )
  {
    throw std::runtime_error( "sweep: no bench files given" );
  }

  const tech_params tech = read_tech_file( opt.tech_path );
  const pg_library lib = pg_library::build( !opt.no_inversion );
  const report_header header = make_header( opt.tech_path );

  std::ostringstream csv;
  csv << sweep_csv_header() << "\n";
  for ( const auto& path : bench_paths )
  {
    const netlist n = read_bench_file( path );
    const analyze_report rep = analyze_design( n, tech, lib, opt.max_leaves, header );
    csv << sweep_csv_row( rep ) << "\n";
  }
  std::cout << csv.str();
  if ( !out_file.empty() )
  {
    write_file( out_file, csv.str() );
  }
  return 0;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "nvclust: non-volatile clustering synthesis and analysis" };
  app.require_subcommand( 1 );

  common_options opt;
  sim_options sopt;
  std::string libdump_out, sweep_dir, sweep_out;
  std::vector<std::string> sweep_benches;
  bool csv_mode = false, with_paths = false;

  auto add_common = [&]( CLI::App* sub, bool with_bench = true ) {
    if ( with_bench )
      sub->add_option( "bench", opt.bench_path, ".bench netlist file" )->required();
    sub->add_option( "--tech", opt.tech_path, "technology file" )->capture_default_str();
    sub->add_option( "--out", opt.out_dir, "output directory" )->capture_default_str();
    sub->add_option( "--max-leaves", opt.max_leaves, "cone leaf budget" )->capture_default_str();
    sub->add_flag( "--no-inversion", opt.no_inversion, "build the PG library without output inversion" );
  };

  CLI::App* sub_validate = app.add_subcommand( "validate", "parse and validate a netlist" );
  add_common( sub_validate );

  CLI::App* sub_libdump = app.add_subcommand( "libdump", "print the PG cell library" );
  add_common( sub_libdump, false );
  sub_libdump->add_option( "-o,--output", libdump_out, "write to file instead of stdout" );

  CLI::App* sub_synth = app.add_subcommand( "synth", "run the clustering pass" );
  add_common( sub_synth );

  CLI::App* sub_analyze = app.add_subcommand( "analyze", "cost and vulnerability reports" );
  add_common( sub_analyze );
  sub_analyze->add_flag( "--csv", csv_mode, "print a CSV row instead of the text report" );
  sub_analyze->add_flag( "--paths", with_paths, "include per-path details in the JSON report" );

  CLI::App* sub_simulate = app.add_subcommand( "simulate", "Monte-Carlo intermittent execution" );
  add_common( sub_simulate );
  sub_simulate->add_option( "--trials", sopt.trials )->capture_default_str();
  sub_simulate->add_option( "--seed", sopt.seed )->capture_default_str();
  sub_simulate->add_option( "--horizon-ns", sopt.horizon_ns )->capture_default_str();
  sub_simulate->add_option( "--jitter", sopt.jitter )->capture_default_str();
  sub_simulate->add_option( "--jobs", sopt.jobs )->capture_default_str();
  sub_simulate->add_flag( "--paired", sopt.paired, "also run the all-NVFF baseline; write paired CSV" );
  sub_simulate->add_option( "--capacitance-nf", sopt.capacitance_nf )->capture_default_str();
  sub_simulate->add_option( "--harvest-ua", sopt.harvest_ua )->capture_default_str();
  sub_simulate->add_option( "--load-ua", sopt.load_ua )->capture_default_str();
  sub_simulate->add_option( "--v-on", sopt.v_on )->capture_default_str();
  sub_simulate->add_option( "--v-off", sopt.v_off )->capture_default_str();
  sub_simulate->add_option( "--v-max", sopt.v_max )->capture_default_str();

  CLI::App* sub_sweep = app.add_subcommand( "sweep", "analyze many circuits into one CSV" );
  add_common( sub_sweep, false );
  sub_sweep->add_option( "benches", sweep_benches, ".bench files" );
  sub_sweep->add_option( "--dir", sweep_dir, "directory of .bench files" );
  sub_sweep->add_option( "-o,--output", sweep_out, "also write the CSV to a file" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const int code = app.exit( e );
    return code == 0 ? 0 : 1;
  }

  try
  {
    if ( sub_validate->parsed() )
      return cmd_validate( opt );
    if ( sub_libdump->parsed() )
      return cmd_libdump( opt, libdump_out );
    if ( sub_synth->parsed() )
      return cmd_synth( opt );
    if ( sub_analyze->parsed() )
      return cmd_analyze( opt, csv_mode, with_paths );
    if ( sub_simulate->parsed() )
      return cmd_simulate( opt, sopt );
    if ( sub_sweep->parsed() )
      return cmd_sweep( opt, sweep_benches, sweep_dir, sweep_out );
  }
  catch ( const parse_error& e )
  {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  catch ( const validation_error& e )
  {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  catch ( const std::runtime_error& e )
  {
    /* input / file problems */
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
  return 1;
}
