#include "clearance/error.hpp"

#include <utility>

namespace clearance {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::NonSimplePolygon: return "NonSimplePolygon";
    case ErrorKind::PolygonsIntersect: return "PolygonsIntersect";
    case ErrorKind::DegenerateVertexRun: return "DegenerateVertexRun";
    case ErrorKind::DuplicatePolygonId: return "DuplicatePolygonId";
    case ErrorKind::EmptyScene: return "EmptyScene";
    case ErrorKind::InvalidBudget: return "InvalidBudget";
    case ErrorKind::InvalidClearance: return "InvalidClearance";
    case ErrorKind::PlacementFailure: return "PlacementFailure";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string message, std::vector<int> polygon_ids,
             std::string field)
    : std::runtime_error(std::move(message)),
      kind_(kind),
      polygon_ids_(std::move(polygon_ids)),
      field_(std::move(field)) {}

}  // namespace clearance
