#include "qdv/group_cache.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdv {

std::string to_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

static int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("from_hex: bad digit");
}

std::string from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
    std::string out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out.push_back(static_cast<char>(hex_val(hex[i]) * 16 + hex_val(hex[i + 1])));
    return out;
}

void save_group_cache(const std::string& path, const GroupCacheRecord& record) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    // Write to a temp file then rename, so a crashed run can't leave a
    // truncated cache behind.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("save_group_cache: cannot open " + tmp);
        out << "group " << record.name << " order " << record.encodings.size() << " kind "
            << record.kind << "\n";
        for (std::size_t i = 0; i < record.encodings.size(); ++i) {
            out << to_hex(record.encodings[i]);
            if (i < record.extras.size() && !record.extras[i].empty())
                out << ' ' << to_hex(record.extras[i]);
            out << '\n';
        }
        if (!out) throw std::runtime_error("save_group_cache: write failed");
    }
    std::filesystem::rename(tmp, path);
}

std::optional<GroupCacheRecord> load_group_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("group cache: empty file");
    std::istringstream hs(header);
    std::string tag, name, order_tag, kind_tag, kind;
    std::size_t order = 0;
    if (!(hs >> tag >> name >> order_tag >> order >> kind_tag >> kind) || tag != "group" ||
        order_tag != "order" || kind_tag != "kind")
        throw std::runtime_error("group cache: malformed header in " + path);
    GroupCacheRecord rec;
    rec.name = name;
    rec.kind = kind;
    rec.encodings.reserve(order);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto space = line.find(' ');
        if (space == std::string::npos) {
            rec.encodings.push_back(from_hex(line));
            rec.extras.emplace_back();
        } else {
            rec.encodings.push_back(from_hex(line.substr(0, space)));
            rec.extras.push_back(from_hex(line.substr(space + 1)));
        }
    }
    if (rec.encodings.size() != order)
        throw std::runtime_error("group cache: element count mismatch in " + path);
    return rec;
}

}  // namespace qdv
