// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/node/node.hpp"

#include <string>
#include <string_view>

namespace ipfsim::node {

/// One line-delimited JSON record per operation:
/// {op, cid, region, node, t_ms, phases{...}, total_ms, walk_ms, rpc_ms, success, ...}.
std::string publication_record(const PublicationReport& r, std::string_view region,
                               const PeerId& node, bool success = true);
std::string retrieval_record(const RetrievalReport& r, std::string_view region,
                             const PeerId& node);

}  // namespace ipfsim::node
