#pragma once

// On-disk cache for enumerated groups. Text format:
//
//   group <name> order <N> kind <matrix|unitary|perm>
//   <one canonical element encoding per line, lowercase hex>
//
// Reload preserves the element order exactly, so every enumeration-order-
// dependent result is identical between cold and warm runs. For kind
// `unitary` a line may carry a second hex field (a generator word) from
// which the dense matrix is rebuilt deterministically.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qdv {

struct GroupCacheRecord {
    std::string name;
    std::string kind;
    std::vector<std::string> encodings;  // raw bytes, hex-decoded
    std::vector<std::string> extras;     // optional per-line second field (raw bytes)
};

std::string to_hex(const std::string& bytes);
std::string from_hex(const std::string& hex);

void save_group_cache(const std::string& path, const GroupCacheRecord& record);

// std::nullopt when the file does not exist; throws on a malformed file.
std::optional<GroupCacheRecord> load_group_cache(const std::string& path);

}  // namespace qdv
