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
  \file reports.hpp
  \brief Design comparison assembly and JSON / text / CSV serialization

  Every report carries a header with the tool version, the technology
  file hash, and the path-universe convention used for the vulnerability
  metric, so emitted numbers stay auditable.
*/

#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "clustering.hpp"
#include "intermit.hpp"
#include "netlist.hpp"
#include "pg_library.hpp"
#include "tech.hpp"
#include "version.hpp"

namespace nvclust
{

inline constexpr const char* dvt_path_universe =
    "pairwise NV endpoints (input registers, flip-flops, output registers); t_C is the maximum "
    "combinational delay between the pair";

struct report_header
{
  std::string tech_file;
  std::string tech_hash;

  nlohmann::json to_json() const
  {
    return { { "tool", "nvclust" },
             { "version", version_string },
             { "tech_file", tech_file },
             { "tech_hash", tech_hash },
             { "dvt_path_universe", dvt_path_universe } };
  }
};

/*! \brief One design's metrics: cost plus vulnerability. */
struct design_metrics
{
  cost_report cost;
  dvt_report dvt;
};

/*! \brief Baseline (all flip-flops mapped to NVFF) vs clustered comparison. */
struct analyze_report
{
  report_header header;
  std::string circuit;
  size_t num_inputs = 0, num_outputs = 0, num_ffs = 0, num_gates = 0;
  size_t num_leff = 0, num_nvff = 0, num_gates_clustered = 0;
  design_metrics baseline;
  design_metrics clustered;
  improvement impr;
  double dvt_impr_pct = 0.0;
};

/*! \brief All-NVFF mapping of a freshly parsed design: the conventional
 * non-volatile baseline the clustering flow is compared against.
 */
inline netlist nvff_baseline( const netlist& n )
{
  cluster_plan empty_plan;
  for ( const auto& [id, ff] : n.ffs() )
  {
    if ( ff.kind == ff_kind::LEFF )
    {
      throw validation_error( "baseline mapping needs the original design; '" + id + "' is already a LEFF" );
    }
    empty_plan.residual_nvffs.insert( id );
  }
  return apply_plan( n, empty_plan );
}

inline analyze_report analyze_design( const netlist& n, const tech_params& tech, const pg_library& lib,
                                      size_t max_leaves, const report_header& header )
{
  analyze_report rep;
  rep.header = header;
  rep.circuit = n.name();
  rep.num_inputs = n.inputs().size();
  rep.num_outputs = n.outputs().size();
  rep.num_ffs = n.ffs().size();
  rep.num_gates = n.gates().size();

  const netlist baseline = nvff_baseline( n );
  const cluster_plan plan = nv_cluster( n, lib, max_leaves );
  const netlist clustered = apply_plan( n, plan );

  rep.num_leff = plan.accepted.size();
  rep.num_nvff = plan.residual_nvffs.size();
  rep.num_gates_clustered = clustered.gates().size();

  rep.baseline.cost = cost( baseline, tech );
  rep.baseline.dvt = sensitive_paths( baseline, tech );
  rep.clustered.cost = cost( clustered, tech );
  rep.clustered.dvt = sensitive_paths( clustered, tech );
  rep.impr = compare( rep.baseline.cost, rep.clustered.cost );
  rep.dvt_impr_pct = rep.baseline.dvt.dvt_ns > 0.0
                         ? 100.0 * ( rep.baseline.dvt.dvt_ns - rep.clustered.dvt.dvt_ns ) / rep.baseline.dvt.dvt_ns
                         : 0.0;
  return rep;
}

namespace detail
{

inline nlohmann::json metrics_to_json( const design_metrics& m, bool with_paths )
{
  nlohmann::json j = { { "area_um2", m.cost.area_um2 },
                       { "power_uw", m.cost.power_uw },
                       { "delay_ns", m.cost.delay_ns },
                       { "energy_uw_ns", m.cost.energy_uw_ns },
                       { "dvt_ns", m.dvt.dvt_ns },
                       { "num_sensitive_paths", m.dvt.paths.size() } };
  if ( with_paths )
  {
    nlohmann::json paths = nlohmann::json::array();
    for ( const auto& p : m.dvt.paths )
    {
      paths.push_back(
          { { "source", p.source }, { "destination", p.destination }, { "t_c_ns", p.t_c_ns }, { "t_s_ns", p.t_s_ns } } );
    }
    j["paths"] = paths;
  }
  return j;
}

} // namespace detail

inline nlohmann::json to_json( const analyze_report& rep, bool with_paths = false )
{
  return { { "header", rep.header.to_json() },
           { "circuit", rep.circuit },
           { "elements",
             { { "inputs", rep.num_inputs },
               { "outputs", rep.num_outputs },
               { "ffs", rep.num_ffs },
               { "gates", rep.num_gates },
               { "leff", rep.num_leff },
               { "nvff", rep.num_nvff },
               { "gates_clustered", rep.num_gates_clustered } } },
           { "baseline", detail::metrics_to_json( rep.baseline, with_paths ) },
           { "clustered", detail::metrics_to_json( rep.clustered, with_paths ) },
           { "improvement_pct",
             { { "area", rep.impr.area_pct },
               { "power", rep.impr.power_pct },
               { "delay", rep.impr.delay_pct },
               { "energy", rep.impr.energy_pct },
               { "dvt", rep.dvt_impr_pct } } } };
}

inline std::string to_text( const analyze_report& rep )
{
  std::ostringstream os;
  char buf[160];
  os << "# nvclust " << version_string << " | tech " << rep.header.tech_file << " (fnv1a " << rep.header.tech_hash
     << ")\n";
  os << "# dvt paths: " << dvt_path_universe << "\n";
  os << "circuit " << rep.circuit << ": inputs=" << rep.num_inputs << " outputs=" << rep.num_outputs
     << " ffs=" << rep.num_ffs << " gates=" << rep.num_gates << "\n";
  os << "clustering: leff=" << rep.num_leff << " nvff=" << rep.num_nvff
     << " gates_left=" << rep.num_gates_clustered << "\n";
  std::snprintf( buf, sizeof buf, "%-12s %14s %14s %10s\n", "metric", "baseline", "clustered", "impr%" );
  os << buf;
  auto row = [&]( const char* name, double b, double c, double i ) {
    std::snprintf( buf, sizeof buf, "%-12s %14.4f %14.4f %9.2f%%\n", name, b, c, i );
    os << buf;
  };
  row( "area_um2", rep.baseline.cost.area_um2, rep.clustered.cost.area_um2, rep.impr.area_pct );
  row( "power_uw", rep.baseline.cost.power_uw, rep.clustered.cost.power_uw, rep.impr.power_pct );
  row( "delay_ns", rep.baseline.cost.delay_ns, rep.clustered.cost.delay_ns, rep.impr.delay_pct );
  row( "energy_uwns", rep.baseline.cost.energy_uw_ns, rep.clustered.cost.energy_uw_ns, rep.impr.energy_pct );
  row( "dvt_ns", rep.baseline.dvt.dvt_ns, rep.clustered.dvt.dvt_ns, rep.dvt_impr_pct );
  return os.str();
}

inline std::string sweep_csv_header()
{
  return "circuit,inputs,outputs,ffs,gates,leff,nvff,"
         "area_base,power_base,delay_base,energy_base,dvt_base,"
         "area_clust,power_clust,delay_clust,energy_clust,dvt_clust,"
         "area_impr_pct,power_impr_pct,delay_impr_pct,energy_impr_pct,dvt_impr_pct";
}

inline std::string sweep_csv_row( const analyze_report& rep )
{
  char buf[512];
  std::snprintf( buf, sizeof buf,
                 "%s,%zu,%zu,%zu,%zu,%zu,%zu,"
                 "%.6f,%.6f,%.6f,%.6f,%.6f,"
                 "%.6f,%.6f,%.6f,%.6f,%.6f,"
                 "%.4f,%.4f,%.4f,%.4f,%.4f",
                 rep.circuit.c_str(), rep.num_inputs, rep.num_outputs, rep.num_ffs, rep.num_gates, rep.num_leff,
                 rep.num_nvff, rep.baseline.cost.area_um2, rep.baseline.cost.power_uw, rep.baseline.cost.delay_ns,
                 rep.baseline.cost.energy_uw_ns, rep.baseline.dvt.dvt_ns, rep.clustered.cost.area_um2,
                 rep.clustered.cost.power_uw, rep.clustered.cost.delay_ns, rep.clustered.cost.energy_uw_ns,
                 rep.clustered.dvt.dvt_ns, rep.impr.area_pct, rep.impr.power_pct, rep.impr.delay_pct,
                 rep.impr.energy_pct, rep.dvt_impr_pct );
  return buf;
}

inline nlohmann::json sim_result_to_json( const sim_result& r )
{
  return { { "seed", r.seed },
           { "attempted", r.cycles_attempted },
           { "committed", r.cycles_committed },
           { "losses", r.losses },
           { "lost_cycles", r.lost_cycles },
           { "reboots", r.reboots },
           { "forward_progress", r.forward_progress } };
}

inline nlohmann::json monte_carlo_to_json( const report_header& header, const std::string& circuit,
                                           const monte_carlo_result& mc, const monte_carlo_config& cfg,
                                           const harvester_model& model, double horizon_ns, double dvt_ns,
                                           double clock_period_ns, bool with_trials = true )
{
  std::vector<double> losses;
  losses.reserve( mc.trials.size() );
  for ( const auto& t : mc.trials )
    losses.push_back( static_cast<double>( t.losses ) );
  const auto ci = bootstrap_mean_ci( losses, 0.95, 1000, cfg.master_seed ^ 0x5eedull );

  nlohmann::json j = { { "header", header.to_json() },
                       { "circuit", circuit },
                       { "design", { { "dvt_ns", dvt_ns }, { "clock_period_ns", clock_period_ns } } },
                       { "config",
                         { { "trials", cfg.trials },
                           { "jitter_fraction", cfg.jitter_fraction },
                           { "seed", cfg.master_seed },
                           { "horizon_ns", horizon_ns },
                           { "harvester",
                             { { "capacitance_nf", model.capacitance_nf },
                               { "harvest_current_ua", model.harvest_current_ua },
                               { "load_current_ua", model.load_current_ua },
                               { "v_on", model.v_on },
                               { "v_off", model.v_off },
                               { "v_max", model.v_max } } } } },
                       { "aggregate",
                         { { "mean_losses", mc.mean_losses },
                           { "mean_lost_cycles", mc.mean_lost_cycles },
                           { "mean_forward_progress", mc.mean_forward_progress },
                           { "losses_ci95", { ci.first, ci.second } } } } };
  if ( with_trials )
  {
    nlohmann::json trials = nlohmann::json::array();
    for ( const auto& t : mc.trials )
      trials.push_back( sim_result_to_json( t ) );
    j["trials"] = trials;
  }
  return j;
}

inline std::string paired_csv_header()
{
  return "trial,losses_base,losses_clust,lost_cycles_base,lost_cycles_clust,progress_base,progress_clust";
}

inline std::string paired_csv( const monte_carlo_result& base, const monte_carlo_result& clust )
{
  std::ostringstream os;
  os << paired_csv_header() << "\n";
  char buf[160];
  for ( size_t i = 0; i < base.trials.size() && i < clust.trials.size(); ++i )
  {
    std::snprintf( buf, sizeof buf, "%zu,%llu,%llu,%llu,%llu,%.6f,%.6f\n", i,
                   static_cast<unsigned long long>( base.trials[i].losses ),
                   static_cast<unsigned long long>( clust.trials[i].losses ),
                   static_cast<unsigned long long>( base.trials[i].lost_cycles ),
                   static_cast<unsigned long long>( clust.trials[i].lost_cycles ), base.trials[i].forward_progress,
                   clust.trials[i].forward_progress );
    os << buf;
  }
  return os.str();
}

} // namespace nvclust
