#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qtgi/qtensor.hpp"

namespace qtgi {

/// QT1 text format:
///
///   QT1
///   n1 n2 n3
///   w x y z        <- one line per entry, k outermost, then i, then j
///
/// Components are written with 17 significant digits, so parse(serialize(A))
/// reproduces A bit for bit. '#' starts a comment that runs to the end of the
/// line; comments may appear anywhere.
QTensor parse_qt(std::string_view text);
QTensor read_qt_file(const std::filesystem::path& path);

/// `comment` lines, if any, are emitted as '#' lines after the magic.
void serialize_qt(std::ostream& os, const QTensor& a, std::string_view comment = {});
std::string serialize_qt(const QTensor& a, std::string_view comment = {});
void write_qt_file(const std::filesystem::path& path, const QTensor& a, std::string_view comment = {});

/// Parses a quaternion literal such as "2i-j", "1+i+j+k" or "-0.0245-0.0196i".
/// Throws ParseError(MalformedNumber) on anything else.
Quaternion parse_quaternion_literal(std::string_view text);

}  // namespace qtgi
