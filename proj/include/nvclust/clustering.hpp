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
  \file clustering.hpp
  \brief Flip-flop / logic-cone clustering pass

  For every flip-flop the pass grows the cone of combinational gates
  feeding its D input, tests the three acceptance criteria

    1. the cone function is realizable by a single PG cell,
    2. every cone gate has fan-out one and the sink feeds only the root
       flip-flop,
    3. no cone gate reads another flip-flop's output directly,

  and replaces each accepted (cone, flip-flop) pair with a
  logic-embedded flip-flop.  Remaining flip-flops become plain
  non-volatile flip-flops.  When only criterion 1 fails, the cone is
  retried with the deepest absorbed gate trimmed until it realizes or
  runs empty.
*/

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "netlist.hpp"
#include "pg_library.hpp"
#include "truth_table.hpp"

namespace nvclust
{

struct cone
{
  std::string root_ff;
  std::vector<std::string> members; /* absorption order; members[0] is the sink */
  std::vector<std::string> leaves;  /* free inputs, in variable order */
  truth_table function;

  bool empty() const { return members.empty(); }
};

struct criteria_report
{
  bool single_pg = false;
  std::optional<pg_realization> realization;
  bool fanout_ok = false;
  std::optional<std::string> fanout_violator;
  bool no_ff_inputs = false;
  std::optional<std::string> ff_input_violator;

  bool accepted() const { return single_pg && fanout_ok && no_ff_inputs; }
};

struct accepted_cluster
{
  cone cluster_cone;
  pg_realization realization;
};

struct cluster_plan
{
  std::map<std::string, accepted_cluster> accepted; /* root ff id -> cone */
  std::set<std::string> residual_nvffs;

  /* `ff=<id> kind=<LEFF|NVFF> gates=[...] table=0x<hex> leaves=[...]`, one line per FF */
  void dump( std::ostream& os ) const
  {
    auto bracket_list = []( const std::vector<std::string>& items ) {
      std::string s = "[";
      for ( size_t i = 0; i < items.size(); ++i )
        s += ( i ? "," : "" ) + items[i];
      return s + "]";
    };
    std::map<std::string, std::string> lines;
    for ( const auto& [ff, acc] : accepted )
    {
      std::ostringstream line;
      line << "ff=" << ff << " kind=LEFF gates=" << bracket_list( acc.cluster_cone.members )
           << " table=" << acc.cluster_cone.function.to_hex() << " leaves=" << bracket_list( acc.cluster_cone.leaves );
      lines.emplace( ff, line.str() );
    }
    for ( const auto& ff : residual_nvffs )
      lines.emplace( ff, "ff=" + ff + " kind=NVFF gates=[] table=0x0 leaves=[]" );
    for ( const auto& [ff, line] : lines )
      os << line << "\n";
  }

  std::string dump_string() const
  {
    std::ostringstream os;
    dump( os );
    return os.str();
  }
};

namespace detail
{

/*! \brief Evaluates a cone's function over its leaves by exhaustive assignment. */
inline truth_table cone_function( const netlist& n, const std::vector<std::string>& members,
                                  const std::vector<std::string>& leaves, const std::string& sink )
{
  const int arity = static_cast<int>( leaves.size() );
  truth_table tt( arity, 0 );
  /* members are absorbed sink-first; reversing yields a valid evaluation order
     (every member's gate inputs are leaves or deeper members) */
  std::vector<const gate*> order;
  for ( auto it = members.rbegin(); it != members.rend(); ++it )
    order.push_back( n.find_gate( *it ) );
  for ( uint64_t a = 0; a < tt.num_rows(); ++a )
  {
    std::map<std::string, bool> value;
    for ( size_t i = 0; i < leaves.size(); ++i )
      value[leaves[i]] = ( a >> i ) & 1ull;
    for ( const gate* g : order )
    {
      std::vector<bool> ins;
      ins.reserve( g->inputs.size() );
      for ( const auto& in : g->inputs )
        ins.push_back( value.at( in ) );
      value[g->output] = eval_gate( g->kind, ins );
    }
    tt.set_value( a, value.at( sink ) );
  }
  return tt;
}

/*! \brief Cone growth; `absorb_limit` caps the number of absorbed gates
 * (including the sink) so the trim loop can re-extract shorter prefixes.
 */
inline cone extract_cone_limited( const netlist& n, const std::string& ff_id, size_t max_leaves, size_t absorb_limit )
{
  const flip_flop* ff = n.find_ff( ff_id );
  if ( ff == nullptr )
  {
    throw validation_error( "unknown flip-flop '" + ff_id + "'" );
  }

  cone c;
  c.root_ff = ff_id;

  const std::string& d = ff->d;
  const driver_kind dk = n.driver( d );
  if ( dk != driver_kind::gate_output || absorb_limit == 0 )
  {
    /* degenerate: D comes straight from a primary input or another FF */
    c.leaves = { d };
    c.function = truth_table::identity();
    return c;
  }

  const gate* sink = n.find_gate( d );
  if ( sink->inputs.size() > static_cast<size_t>( truth_table::max_arity ) )
  {
    /* cannot represent the sink function; treat as unclusterable */
    c.leaves = { d };
    c.function = truth_table::identity();
    return c;
  }

  c.members.push_back( sink->output );
  for ( const auto& in : sink->inputs )
  {
    if ( std::find( c.leaves.begin(), c.leaves.end(), in ) == c.leaves.end() )
      c.leaves.push_back( in );
  }

  /* a cone whose sink already reads an FF output is dead on criterion 3;
     growing it further is pointless */
  const bool ff_leaf = std::any_of( c.leaves.begin(), c.leaves.end(),
                                    [&]( const std::string& l ) { return n.is_ff_output( l ); } );

  /* frontier in (depth, net id) order: breadth first, lexicographic ties */
  std::set<std::pair<size_t, std::string>> frontier;
  for ( const auto& l : c.leaves )
    frontier.emplace( 1, l );

  while ( !ff_leaf && !frontier.empty() && c.members.size() < absorb_limit )
  {
    const auto [depth, net] = *frontier.begin();
    frontier.erase( frontier.begin() );
    if ( std::find( c.leaves.begin(), c.leaves.end(), net ) == c.leaves.end() )
      continue; /* no longer a leaf */
    if ( n.driver( net ) != driver_kind::gate_output )
      continue;
    const gate* g = n.find_gate( net );
    if ( n.fanout_of_net( net ) != 1 )
      continue;
    const bool reads_ff = std::any_of( g->inputs.begin(), g->inputs.end(),
                                       [&]( const std::string& in ) { return n.is_ff_output( in ); } );
    if ( reads_ff )
      continue;

    /* leaf set after absorbing g: `net` replaced in place by g's new inputs */
    std::vector<std::string> new_leaves;
    new_leaves.reserve( c.leaves.size() + g->inputs.size() );
    size_t splice_pos = 0;
    for ( const auto& l : c.leaves )
    {
      if ( l == net )
        splice_pos = new_leaves.size();
      else
        new_leaves.push_back( l );
    }
    std::vector<std::string> inserted;
    for ( const auto& in : g->inputs )
    {
      if ( std::find( new_leaves.begin(), new_leaves.end(), in ) == new_leaves.end() &&
           std::find( inserted.begin(), inserted.end(), in ) == inserted.end() )
      {
        inserted.push_back( in );
      }
    }
    new_leaves.insert( new_leaves.begin() + static_cast<std::ptrdiff_t>( splice_pos ), inserted.begin(),
                       inserted.end() );
    if ( new_leaves.size() > max_leaves )
      continue;

    c.members.push_back( g->output );
    c.leaves = std::move( new_leaves );
    for ( const auto& in : inserted )
      frontier.emplace( depth + 1, in );
  }

  c.function = cone_function( n, c.members, c.leaves, sink->output );
  return c;
}

} // namespace detail

/*! \brief Maximal deterministic cone growth for one flip-flop.
 *
 * Starts at the gate driving the D input; a frontier gate is absorbed
 * iff its fan-out is exactly one, none of its inputs is an FF output,
 * and the leaf budget is kept.  Returns a degenerate single-leaf
 * identity cone when the D net is a primary input or FF output.
 */
inline cone extract_cone( const netlist& n, const std::string& ff_id, size_t max_leaves = 5 )
{
  return detail::extract_cone_limited( n, ff_id, max_leaves, static_cast<size_t>( -1 ) );
}

/*! \brief Tests the three clustering criteria for an extracted cone. */
inline criteria_report check_criteria( const netlist& n, const cone& c, const pg_library& lib )
{
  if ( n.find_ff( c.root_ff ) == nullptr )
  {
    throw validation_error( "criteria check: cone root '" + c.root_ff + "' not in netlist" );
  }
  for ( const auto& m : c.members )
  {
    if ( n.find_gate( m ) == nullptr )
    {
      throw validation_error( "criteria check: cone member '" + m + "' not in netlist" );
    }
  }

  criteria_report rep;
  rep.realization = lib.realize( c.function );
  rep.single_pg = rep.realization.has_value();

  rep.fanout_ok = true;
  for ( size_t i = 0; i < c.members.size(); ++i )
  {
    const size_t fo = n.fanout_of_net( c.members[i] );
    if ( fo != 1 )
    {
      rep.fanout_ok = false;
      rep.fanout_violator = c.members[i];
      break;
    }
  }
  /* the sink's single pin must be the root FF's D input */
  if ( rep.fanout_ok && !c.members.empty() )
  {
    const flip_flop* ff = n.find_ff( c.root_ff );
    if ( ff->d != c.members.front() )
    {
      rep.fanout_ok = false;
      rep.fanout_violator = c.members.front();
    }
  }

  rep.no_ff_inputs = true;
  for ( const auto& m : c.members )
  {
    const gate* g = n.find_gate( m );
    for ( const auto& in : g->inputs )
    {
      if ( n.is_ff_output( in ) )
      {
        rep.no_ff_inputs = false;
        rep.ff_input_violator = m;
        break;
      }
    }
    if ( !rep.no_ff_inputs )
      break;
  }
  return rep;
}

/*! \brief Runs the clustering pass over every flip-flop (deterministic id order). */
inline cluster_plan nv_cluster( const netlist& n, const pg_library& lib, size_t max_leaves = 5 )
{
  cluster_plan plan;
  std::set<std::string> claimed;

  for ( const auto& [ff_id, ff] : n.ffs() )
  {
    cone c = extract_cone( n, ff_id, max_leaves );
    bool accepted = false;
    if ( !c.empty() )
    {
      criteria_report rep = check_criteria( n, c, lib );
      if ( rep.accepted() )
      {
        plan.accepted.emplace( ff_id, accepted_cluster{ c, *rep.realization } );
        accepted = true;
      }
      else if ( rep.fanout_ok && rep.no_ff_inputs )
      {
        /* rejected for criterion 1 only: trim the deepest absorbed gate and retry */
        for ( size_t limit = c.members.size() - 1; limit >= 1; --limit )
        {
          cone trimmed = detail::extract_cone_limited( n, ff_id, max_leaves, limit );
          criteria_report trep = check_criteria( n, trimmed, lib );
          if ( trep.accepted() )
          {
            plan.accepted.emplace( ff_id, accepted_cluster{ trimmed, *trep.realization } );
            accepted = true;
            break;
          }
        }
      }
    }
    if ( !accepted )
    {
      plan.residual_nvffs.insert( ff_id );
      continue;
    }
    /* fan-out-one growth makes overlapping accepted cones impossible */
    for ( const auto& m : plan.accepted.at( ff_id ).cluster_cone.members )
    {
      if ( !claimed.insert( m ).second )
      {
        throw std::logic_error( "nv_cluster: gate '" + m + "' claimed by two cones" );
      }
    }
  }
  return plan;
}

/*! \brief Applies a plan: deletes absorbed gates, converts flip-flops.
 *
 * Accepted roots become LEFFs embedding the cone function; residual
 * flip-flops become NVFFs.  The input netlist is left untouched; the
 * transformed netlist is validated before it is returned.
 */
inline netlist apply_plan( const netlist& n, const cluster_plan& plan )
{
  /* staleness checks: the plan must partition this netlist's FF set and
     reference live structure */
  if ( plan.accepted.size() + plan.residual_nvffs.size() != n.ffs().size() )
  {
    throw validation_error( "stale plan: flip-flop count does not match netlist" );
  }
  std::set<std::string> deleted;
  for ( const auto& [ff_id, acc] : plan.accepted )
  {
    const flip_flop* ff = n.find_ff( ff_id );
    if ( ff == nullptr || acc.cluster_cone.empty() || ff->d != acc.cluster_cone.members.front() )
    {
      throw validation_error( "stale plan: cone for '" + ff_id + "' does not match netlist" );
    }
    for ( const auto& m : acc.cluster_cone.members )
    {
      if ( n.find_gate( m ) == nullptr )
      {
        throw validation_error( "stale plan: cone member '" + m + "' not in netlist" );
      }
      deleted.insert( m );
    }
    for ( const auto& l : acc.cluster_cone.leaves )
    {
      if ( !n.has_net( l ) )
      {
        throw validation_error( "stale plan: cone leaf '" + l + "' not in netlist" );
      }
    }
  }
  for ( const auto& ff_id : plan.residual_nvffs )
  {
    if ( n.find_ff( ff_id ) == nullptr )
    {
      throw validation_error( "stale plan: residual flip-flop '" + ff_id + "' not in netlist" );
    }
  }

  netlist out;
  out.set_name( n.name() );
  for ( const auto& in : n.inputs() )
    out.add_input( in );
  for ( const auto& o : n.outputs() )
    out.add_output( o );
  for ( const auto& [id, ff] : n.ffs() )
  {
    auto acc = plan.accepted.find( id );
    if ( acc != plan.accepted.end() )
      out.add_leff( id, acc->second.cluster_cone.function, acc->second.cluster_cone.leaves );
    else
      out.add_ff( id, ff.d, ff_kind::NVFF );
  }
  for ( const auto& [id, g] : n.gates() )
  {
    if ( deleted.count( id ) == 0 )
      out.add_gate( id, g.kind, g.inputs );
  }
  out.validate();
  return out;
}

} // namespace nvclust
