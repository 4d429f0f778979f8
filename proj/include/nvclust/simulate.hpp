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
  \file simulate.hpp
  \brief Cycle-accurate logic simulator

  Per clock cycle: primary inputs are applied, combinational gates are
  evaluated in topological order, outputs are sampled after settling,
  then every flip-flop captures its next state (D value, or the embedded
  function applied to the leaf nets for LEFFs).  This simulator is the
  sequential-equivalence oracle used by the rewriting tests.
*/

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "netlist.hpp"
#include "rng.hpp"

namespace nvclust
{

using bit_vector = std::vector<bool>;

struct sim_output
{
  std::vector<bit_vector> outputs;       /* one vector per cycle, one bit per primary output */
  std::map<std::string, bool> final_state;
};

/*! \brief Reusable evaluation context for one netlist.
 *
 * Precomputes net indices and the gate schedule once; `step` evaluates a
 * single clock cycle.  Use the free function `simulate` unless you are
 * driving cycles one by one (e.g. under an intermittent power trace).
 */
class simulator
{
public:
  explicit simulator( const netlist& n ) : netlist_( n ), order_( n.topo_order() )
  {
    auto intern = [&]( const std::string& id ) {
      if ( index_.emplace( id, values_.size() ).second )
        values_.push_back( false );
    };
    for ( const auto& in : n.inputs() )
      intern( in );
    for ( const auto& [id, ff] : n.ffs() )
      intern( id );
    for ( const auto& [id, g] : n.gates() )
      intern( id );
    state_.assign( n.ffs().size(), false );
    size_t i = 0;
    for ( const auto& [id, ff] : n.ffs() )
      ff_slot_.emplace( id, i++ );
  }

  void reset( const std::map<std::string, bool>& initial_state )
  {
    if ( initial_state.size() != netlist_.ffs().size() )
    {
      throw std::invalid_argument( "initial state must cover all " + std::to_string( netlist_.ffs().size() ) +
                                   " flip-flops" );
    }
    for ( const auto& [id, v] : initial_state )
    {
      auto it = ff_slot_.find( id );
      if ( it == ff_slot_.end() )
        throw std::invalid_argument( "initial state names unknown flip-flop '" + id + "'" );
      state_[it->second] = v;
    }
  }

  void reset_zero()
  {
    state_.assign( state_.size(), false );
  }

  /*! \brief Runs one clock cycle and returns the sampled primary outputs. */
  bit_vector step( const bit_vector& input_bits )
  {
    if ( input_bits.size() != netlist_.inputs().size() )
    {
      throw std::invalid_argument( "input vector has " + std::to_string( input_bits.size() ) + " bits, expected " +
                                   std::to_string( netlist_.inputs().size() ) );
    }
    size_t i = 0;
    for ( const auto& in : netlist_.inputs() )
      values_[index_.at( in )] = input_bits[i++];
    for ( const auto& [id, ff] : netlist_.ffs() )
      values_[index_.at( id )] = state_[ff_slot_.at( id )];

    std::vector<bool> ins;
    for ( const gate* g : order_ )
    {
      ins.clear();
      for ( const auto& in : g->inputs )
        ins.push_back( values_[index_.at( in )] );
      values_[index_.at( g->output )] = eval_gate( g->kind, ins );
    }

    bit_vector out;
    out.reserve( netlist_.outputs().size() );
    for ( const auto& o : netlist_.outputs() )
      out.push_back( values_[index_.at( o )] );

    /* capture next state at cycle end */
    for ( const auto& [id, ff] : netlist_.ffs() )
    {
      bool next;
      if ( ff.kind == ff_kind::LEFF )
      {
        uint64_t assignment = 0;
        for ( size_t k = 0; k < ff.leaves.size(); ++k )
          assignment |= static_cast<uint64_t>( values_[index_.at( ff.leaves[k] )] ) << k;
        next = ff.function.value( assignment );
      }
      else
      {
        next = values_[index_.at( ff.d )];
      }
      state_[ff_slot_.at( id )] = next;
    }
    return out;
  }

  std::map<std::string, bool> state() const
  {
    std::map<std::string, bool> s;
    for ( const auto& [id, slot] : ff_slot_ )
      s.emplace( id, state_[slot] );
    return s;
  }

private:
  const netlist& netlist_;
  std::vector<const gate*> order_;
  std::map<std::string, size_t> index_;
  std::vector<bool> values_;
  std::vector<bool> state_;
  std::map<std::string, size_t> ff_slot_;
};

inline sim_output simulate( const netlist& n, const std::map<std::string, bool>& initial_state,
                            const std::vector<bit_vector>& input_sequence )
{
  simulator sim( n );
  sim.reset( initial_state );
  sim_output result;
  result.outputs.reserve( input_sequence.size() );
  for ( const auto& vec : input_sequence )
    result.outputs.push_back( sim.step( vec ) );
  result.final_state = sim.state();
  return result;
}

/* all-zero initial state overload */
inline sim_output simulate( const netlist& n, const std::vector<bit_vector>& input_sequence )
{
  simulator sim( n );
  sim.reset_zero();
  sim_output result;
  result.outputs.reserve( input_sequence.size() );
  for ( const auto& vec : input_sequence )
    result.outputs.push_back( sim.step( vec ) );
  result.final_state = sim.state();
  return result;
}

/*! \brief Seeded random input vectors, one bit per primary input. */
inline std::vector<bit_vector> random_vectors( size_t width, size_t count, uint64_t seed )
{
  rng gen( seed );
  std::vector<bit_vector> vecs( count, bit_vector( width, false ) );
  for ( auto& v : vecs )
  {
    for ( size_t i = 0; i < width; ++i )
      v[i] = gen.next_bit();
  }
  return vecs;
}

} // namespace nvclust
