#ifndef SKEL_DOT_HPP_
#define SKEL_DOT_HPP_

#include <string>

#include "skel/protocol.hpp"
#include "skel/run_model.hpp"

namespace skel {

/// Graphviz text for a round or skeleton graph. Nodes are p0..p{n-1} and
/// always declared, edges sorted, so equal graphs render identically.
/// Self-loops are omitted unless requested.
std::string dot_of(const RoundGraph& g, const std::string& name,
                   bool include_self_loops = false);

/// Graphviz text for an approximation graph; edges carry round labels.
std::string dot_of(const ApproxGraph& g, const std::string& name,
                   bool include_self_loops = false);

}  // namespace skel

#endif  // SKEL_DOT_HPP_
