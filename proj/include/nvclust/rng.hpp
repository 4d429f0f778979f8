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
  \file rng.hpp
  \brief Seeded deterministic random generator (splitmix64)

  All randomness in the library flows through this generator so that
  results are byte-reproducible across runs and platforms.  Standard
  library distributions are avoided on purpose: their output is not
  pinned by the C++ standard.
*/

#pragma once

#include <cstdint>

namespace nvclust
{

inline uint64_t splitmix64_mix( uint64_t z )
{
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

class rng
{
public:
  explicit rng( uint64_t seed ) : state_( seed ) {}

  uint64_t next_u64()
  {
    state_ += 0x9e3779b97f4a7c15ull;
    return splitmix64_mix( state_ );
  }

  /* uniform in [0, 1) with 53 bits of resolution */
  double next_double()
  {
    return static_cast<double>( next_u64() >> 11 ) * 0x1.0p-53;
  }

  double uniform( double lo, double hi )
  {
    return lo + ( hi - lo ) * next_double();
  }

  bool next_bit()
  {
    return ( next_u64() >> 63 ) != 0;
  }

  /* integer in [0, n) */
  uint64_t next_below( uint64_t n )
  {
    return n == 0 ? 0 : next_u64() % n;
  }

  /*! \brief Counter-mode substream derivation.
   *
   * Derives an independent seed for trial `index` from a master seed, so
   * parallel trials stay reproducible regardless of execution order.
   */
  static uint64_t derive( uint64_t master, uint64_t index )
  {
    return splitmix64_mix( master + ( index + 1 ) * 0x9e3779b97f4a7c15ull );
  }

private:
  uint64_t state_;
};

} // namespace nvclust
