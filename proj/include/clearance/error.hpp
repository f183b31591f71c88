#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clearance {

enum class ErrorKind {
  InvalidGeometry,
  NonSimplePolygon,
  PolygonsIntersect,
  DegenerateVertexRun,
  DuplicatePolygonId,
  EmptyScene,
  InvalidBudget,
  InvalidClearance,
  PlacementFailure,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind plus the polygon ids involved
/// (or the offending field for parse errors).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::vector<int> polygon_ids = {},
        std::string field = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<int>& polygon_ids() const noexcept { return polygon_ids_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::vector<int> polygon_ids_;
  std::string field_;
};

}  // namespace clearance
