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

#pragma once

#include <stdexcept>
#include <string>

namespace nvclust
{

/*! \brief Syntax-level failure while reading an input file (line/column anchored). */
class parse_error : public std::runtime_error
{
public:
  parse_error( int line, int column, const std::string& message )
      : std::runtime_error( "line " + std::to_string( line ) + ", col " + std::to_string( column ) + ": " + message ),
        line_( line ), column_( column )
  {
  }

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/*! \brief Structural rule violated by an otherwise well-formed input. */
class validation_error : public std::runtime_error
{
public:
  explicit validation_error( const std::string& message ) : std::runtime_error( message ) {}
};

} // namespace nvclust
