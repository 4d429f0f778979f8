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
  \file netlist.hpp
  \brief Gate-level sequential netlist IR

  The in-memory form of a `.bench` circuit: primary I/O, combinational
  gates and flip-flops over named nets.  In this format an element id is
  identical to the net id it drives, so the driver index only records
  what kind of element drives each net.

  Netlists are immutable once built and validated; rewrites construct a
  new netlist.  Read-only sharing across threads is safe.
*/

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "truth_table.hpp"

namespace nvclust
{

enum class gate_kind
{
  AND,
  NAND,
  OR,
  NOR,
  NOT,
  BUFF,
  XOR,
  XNOR
};

inline const char* to_string( gate_kind k )
{
  switch ( k )
  {
  case gate_kind::AND: return "AND";
  case gate_kind::NAND: return "NAND";
  case gate_kind::OR: return "OR";
  case gate_kind::NOR: return "NOR";
  case gate_kind::NOT: return "NOT";
  case gate_kind::BUFF: return "BUFF";
  case gate_kind::XOR: return "XOR";
  case gate_kind::XNOR: return "XNOR";
  }
  return "?";
}

inline constexpr gate_kind all_gate_kinds[] = {
    gate_kind::AND, gate_kind::NAND, gate_kind::OR, gate_kind::NOR,
    gate_kind::NOT, gate_kind::BUFF, gate_kind::XOR, gate_kind::XNOR };

enum class ff_kind
{
  DFF,  /* volatile */
  NVFF, /* non-volatile store only */
  LEFF  /* non-volatile with embedded logic function */
};

inline const char* to_string( ff_kind k )
{
  switch ( k )
  {
  case ff_kind::DFF: return "DFF";
  case ff_kind::NVFF: return "NVFF";
  case ff_kind::LEFF: return "LEFF";
  }
  return "?";
}

struct gate
{
  std::string output; /* element id == output net id */
  gate_kind kind;
  std::vector<std::string> inputs;

  friend bool operator==( const gate&, const gate& ) = default;
};

struct flip_flop
{
  std::string output;              /* Q net */
  std::string d;                   /* D net; empty for LEFF */
  ff_kind kind = ff_kind::DFF;
  truth_table function;            /* LEFF only */
  std::vector<std::string> leaves; /* LEFF only: function inputs, in variable order */

  friend bool operator==( const flip_flop&, const flip_flop& ) = default;
};

enum class driver_kind
{
  primary_input,
  gate_output,
  ff_output
};

inline bool eval_gate( gate_kind kind, const std::vector<bool>& ins )
{
  switch ( kind )
  {
  case gate_kind::AND:
  case gate_kind::NAND:
  {
    bool v = true;
    for ( bool b : ins )
      v = v && b;
    return kind == gate_kind::AND ? v : !v;
  }
  case gate_kind::OR:
  case gate_kind::NOR:
  {
    bool v = false;
    for ( bool b : ins )
      v = v || b;
    return kind == gate_kind::OR ? v : !v;
  }
  case gate_kind::NOT:
    return !ins[0];
  case gate_kind::BUFF:
    return ins[0];
  case gate_kind::XOR:
  case gate_kind::XNOR:
  {
    bool v = false;
    for ( bool b : ins )
      v = v != b;
    return kind == gate_kind::XOR ? v : !v;
  }
  }
  return false;
}

class netlist
{
public:
  netlist() = default;

  /* --- construction ------------------------------------------------- */

  void set_name( std::string name ) { name_ = std::move( name ); }

  void add_input( const std::string& id )
  {
    claim_driver( id, driver_kind::primary_input );
    inputs_.push_back( id );
  }

  void add_output( const std::string& id ) { outputs_.push_back( id ); }

  void add_gate( const std::string& id, gate_kind kind, std::vector<std::string> inputs )
  {
    claim_driver( id, driver_kind::gate_output );
    gates_.emplace( id, gate{ id, kind, std::move( inputs ) } );
  }

  void add_ff( const std::string& id, const std::string& d, ff_kind kind = ff_kind::DFF )
  {
    claim_driver( id, driver_kind::ff_output );
    ffs_.emplace( id, flip_flop{ id, d, kind, {}, {} } );
  }

  void add_leff( const std::string& id, const truth_table& fn, std::vector<std::string> leaves )
  {
    claim_driver( id, driver_kind::ff_output );
    ffs_.emplace( id, flip_flop{ id, {}, ff_kind::LEFF, fn, std::move( leaves ) } );
  }

  /* --- queries ------------------------------------------------------ */

  const std::string& name() const { return name_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::map<std::string, gate>& gates() const { return gates_; }
  const std::map<std::string, flip_flop>& ffs() const { return ffs_; }

  bool has_net( const std::string& id ) const { return drivers_.count( id ) != 0; }

  driver_kind driver( const std::string& net ) const
  {
    auto it = drivers_.find( net );
    if ( it == drivers_.end() )
    {
      throw validation_error( "unknown net '" + net + "'" );
    }
    return it->second;
  }

  const gate* find_gate( const std::string& id ) const
  {
    auto it = gates_.find( id );
    return it == gates_.end() ? nullptr : &it->second;
  }

  const flip_flop* find_ff( const std::string& id ) const
  {
    auto it = ffs_.find( id );
    return it == ffs_.end() ? nullptr : &it->second;
  }

  bool is_ff_output( const std::string& net ) const
  {
    auto it = drivers_.find( net );
    return it != drivers_.end() && it->second == driver_kind::ff_output;
  }

  size_t num_dffs() const
  {
    size_t n = 0;
    for ( const auto& [id, ff] : ffs_ )
      n += ff.kind == ff_kind::DFF ? 1 : 0;
    return n;
  }

  /*! \brief Input nets of an element: gate inputs, FF D net or LEFF leaves. */
  std::vector<std::string> element_inputs( const std::string& id ) const
  {
    if ( const gate* g = find_gate( id ) )
      return g->inputs;
    if ( const flip_flop* ff = find_ff( id ) )
      return ff->kind == ff_kind::LEFF ? ff->leaves : std::vector<std::string>{ ff->d };
    throw validation_error( "unknown element '" + id + "'" );
  }

  /*! \brief Pin count fed by an element's output net.
   *
   * Counts gate/FF input pins plus primary-output pins.  Pins, not sink
   * elements: a net wired to two pins of the same gate counts twice.
   */
  size_t fanout( const std::string& id ) const
  {
    if ( !find_gate( id ) && !find_ff( id ) &&
         std::find( inputs_.begin(), inputs_.end(), id ) == inputs_.end() )
    {
      throw validation_error( "unknown element '" + id + "'" );
    }
    return fanout_of_net( id );
  }

  size_t fanout_of_net( const std::string& net ) const
  {
    size_t n = 0;
    for ( const auto& [gid, g] : gates_ )
      n += static_cast<size_t>( std::count( g.inputs.begin(), g.inputs.end(), net ) );
    for ( const auto& [fid, ff] : ffs_ )
    {
      if ( ff.kind == ff_kind::LEFF )
        n += static_cast<size_t>( std::count( ff.leaves.begin(), ff.leaves.end(), net ) );
      else
        n += ff.d == net ? 1 : 0;
    }
    n += static_cast<size_t>( std::count( outputs_.begin(), outputs_.end(), net ) );
    return n;
  }

  /*! \brief Gates in dependency order (inputs before consumers). */
  std::vector<const gate*> topo_order() const
  {
    std::vector<const gate*> order;
    order.reserve( gates_.size() );
    std::map<std::string, int> state; /* 0 unseen, 1 on stack, 2 done */
    for ( const auto& [id, g] : gates_ )
    {
      if ( state[id] == 0 )
        topo_visit( id, state, order );
    }
    return order;
  }

  /* --- validation ---------------------------------------------------- */

  /*! \brief Full structural check; throws validation_error on the first violation.
   *
   * Enforces: single driver per net (already maintained incrementally),
   * every referenced net driven, gate arities, LEFF payload consistency,
   * and the absence of combinational cycles.
   */
  void validate() const
  {
    for ( const auto& [id, g] : gates_ )
    {
      const bool unary = g.kind == gate_kind::NOT || g.kind == gate_kind::BUFF;
      if ( unary && g.inputs.size() != 1 )
      {
        throw validation_error( "gate '" + id + "': " + to_string( g.kind ) + " takes exactly 1 input, got " +
                                std::to_string( g.inputs.size() ) );
      }
      if ( !unary && g.inputs.size() < 2 )
      {
        throw validation_error( "gate '" + id + "': " + to_string( g.kind ) + " takes at least 2 inputs, got " +
                                std::to_string( g.inputs.size() ) );
      }
      for ( const auto& in : g.inputs )
        require_driven( in, "gate '" + id + "'" );
    }
    for ( const auto& [id, ff] : ffs_ )
    {
      if ( ff.kind == ff_kind::LEFF )
      {
        if ( ff.leaves.empty() || ff.function.arity() != static_cast<int>( ff.leaves.size() ) )
        {
          throw validation_error( "flip-flop '" + id + "': embedded function arity " +
                                  std::to_string( ff.function.arity() ) + " does not match leaf count " +
                                  std::to_string( ff.leaves.size() ) );
        }
        for ( const auto& leaf : ff.leaves )
          require_driven( leaf, "flip-flop '" + id + "'" );
      }
      else
      {
        require_driven( ff.d, "flip-flop '" + id + "'" );
      }
    }
    for ( const auto& out : outputs_ )
      require_driven( out, "primary output" );
    check_no_combinational_cycle();
  }

  /* structural equality (name excluded) */
  friend bool operator==( const netlist& a, const netlist& b )
  {
    return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_ && a.gates_ == b.gates_ && a.ffs_ == b.ffs_;
  }

private:
  void claim_driver( const std::string& id, driver_kind kind )
  {
    auto [it, fresh] = drivers_.emplace( id, kind );
    if ( !fresh )
    {
      throw validation_error( "duplicate driver for net '" + id + "'" );
    }
  }

  void require_driven( const std::string& net, const std::string& user ) const
  {
    if ( !has_net( net ) )
    {
      throw validation_error( "undriven net '" + net + "' referenced by " + user );
    }
  }

  void topo_visit( const std::string& id, std::map<std::string, int>& state, std::vector<const gate*>& order ) const
  {
    /* iterative DFS; combinational cycles were rejected by validate() */
    std::vector<std::pair<std::string, size_t>> stack{ { id, 0 } };
    while ( !stack.empty() )
    {
      auto& [cur, next_in] = stack.back();
      const gate& g = gates_.at( cur );
      if ( next_in == 0 )
        state[cur] = 1;
      bool descended = false;
      while ( next_in < g.inputs.size() )
      {
        const std::string& in = g.inputs[next_in++];
        auto git = gates_.find( in );
        if ( git != gates_.end() && state[in] == 0 )
        {
          stack.emplace_back( in, 0 );
          descended = true;
          break;
        }
      }
      if ( !descended && next_in >= g.inputs.size() )
      {
        state[cur] = 2;
        order.push_back( &g );
        stack.pop_back();
      }
    }
  }

  void check_no_combinational_cycle() const
  {
    std::map<std::string, int> state;
    for ( const auto& [id, g] : gates_ )
    {
      if ( state[id] != 0 )
        continue;
      std::vector<std::pair<std::string, size_t>> stack{ { id, 0 } };
      state[id] = 1;
      while ( !stack.empty() )
      {
        auto& [cur, next_in] = stack.back();
        const gate& g2 = gates_.at( cur );
        bool descended = false;
        while ( next_in < g2.inputs.size() )
        {
          const std::string& in = g2.inputs[next_in++];
          auto git = gates_.find( in );
          if ( git == gates_.end() )
            continue; /* PI or FF output: sequential boundary */
          if ( state[in] == 1 )
          {
            /* reconstruct cycle members from the stack for the diagnostic */
            std::string members;
            bool in_cycle = false;
            for ( const auto& [sid, _] : stack )
            {
              if ( sid == in )
                in_cycle = true;
              if ( in_cycle )
                members += members.empty() ? sid : ( " -> " + sid );
            }
            members += " -> " + in;
            throw validation_error( "combinational loop: " + members );
          }
          if ( state[in] == 0 )
          {
            state[in] = 1;
            stack.emplace_back( in, 0 );
            descended = true;
            break;
          }
        }
        if ( !descended && next_in >= g2.inputs.size() )
        {
          state[cur] = 2;
          stack.pop_back();
        }
      }
    }
  }

  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::map<std::string, gate> gates_;
  std::map<std::string, flip_flop> ffs_;
  std::map<std::string, driver_kind> drivers_;
};

} // namespace nvclust
