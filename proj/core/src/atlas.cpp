#include "stroketext/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "stroketext/distance.hpp"
#include "stroketext/imageio.hpp"

namespace stroketext {

double GlyphAtlas::max_aspect() const {
    double m = 0.0;
    for (const GlyphEntry& e : entries) m = std::max(m, e.aspect);
    return m;
}

void GlyphAtlas::prepare() {
    for (GlyphEntry& e : entries)
        if (e.dmap.width == 0) e.dmap = distance_to_set(e.mask, kChamferBlank);
}

BinaryMask normalize_glyph(const BinaryMask& mask) {
    int x0 = mask.width, y0 = mask.height, x1 = -1, y1 = -1;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.get(x, y)) {
                x0 = std::min(x0, x);
                y0 = std::min(y0, y);
                x1 = std::max(x1, x);
                y1 = std::max(y1, y);
            }
    if (x1 < x0) throw std::invalid_argument("normalize_glyph: empty mask");
    int w = x1 - x0 + 1, h = y1 - y0 + 1;
    double s = double(kGlyphSize) / std::max(w, h);
    int tw = std::max(1, int(std::lround(w * s)));
    int th = std::max(1, int(std::lround(h * s)));
    int ox = (kGlyphSize - tw) / 2, oy = (kGlyphSize - th) / 2;
    BinaryMask out(kGlyphSize, kGlyphSize);
    for (int ty = 0; ty < th; ++ty)
        for (int tx = 0; tx < tw; ++tx) {
            int sx = std::min(w - 1, int((tx + 0.5) * w / tw));
            int sy = std::min(h - 1, int((ty + 0.5) * h / th));
            if (mask.get(x0 + sx, y0 + sy)) out.set(ox + tx, oy + ty);
        }
    return out;
}

namespace {

double directed_mean(const BinaryMask& from, const DistanceMap& to_map) {
    double sum = 0.0;
    size_t n = 0;
    for (int y = 0; y < from.height; ++y)
        for (int x = 0; x < from.width; ++x)
            if (from.get(x, y)) {
                sum += to_map.at(x, y);
                ++n;
            }
    return n == 0 ? 0.0 : sum / double(n);
}

}  // namespace

double chamfer_distance(const BinaryMask& a, const BinaryMask& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("chamfer_distance: size mismatch");
    DistanceMap da = distance_to_set(a, kChamferBlank);
    DistanceMap db = distance_to_set(b, kChamferBlank);
    return 0.5 * (directed_mean(a, db) + directed_mean(b, da));
}

std::vector<std::pair<char32_t, double>> classify_glyph(const BinaryMask& mask,
                                                        const GlyphAtlas& atlas, int n,
                                                        double temperature) {
    BinaryMask q = normalize_glyph(mask);
    if (atlas.entries.empty()) throw std::invalid_argument("classify_glyph: empty atlas");
    DistanceMap qmap = distance_to_set(q, kChamferBlank);

    std::map<char32_t, double> best;
    for (const GlyphEntry& e : atlas.entries) {
        double d;
        if (e.dmap.width > 0) {
            d = 0.5 * (directed_mean(q, e.dmap) + directed_mean(e.mask, qmap));
        } else {
            d = chamfer_distance(q, e.mask);
        }
        auto it = best.find(e.label);
        if (it == best.end() || d < it->second) best[e.label] = d;
    }

    double lo = best.begin()->second;
    for (const auto& [label, d] : best) lo = std::min(lo, d);
    double lse = 0.0;
    for (const auto& [label, d] : best) lse += std::exp(-(d - lo) / temperature);
    lse = std::log(lse);

    std::vector<std::pair<char32_t, double>> out;
    for (const auto& [label, d] : best) out.push_back({label, (d - lo) / temperature + lse});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    if (int(out.size()) > n) out.resize(size_t(n));
    return out;
}

namespace {

std::string label_tag(char32_t c) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "U+%04X", unsigned(c));
    return buf;
}

}  // namespace

GlyphAtlas load_atlas(const std::string& dir) {
    namespace fs = std::filesystem;
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw std::runtime_error("load_atlas: no manifest in " + dir);
    nlohmann::json j = nlohmann::json::parse(in);

    GlyphAtlas atlas;
    for (const auto& je : j.at("entries")) {
        GlyphEntry e;
        e.label = char32_t(std::stoul(je.at("label").get<std::string>().substr(2), nullptr, 16));
        e.font = je.at("font").get<std::string>();
        e.aspect = je.at("aspect").get<double>();
        GrayImage g = read_gray_png((fs::path(dir) / je.at("file").get<std::string>()).string());
        e.mask = BinaryMask(g.width, g.height);
        for (int y = 0; y < g.height; ++y)
            for (int x = 0; x < g.width; ++x)
                if (g.at(x, y) >= 128) e.mask.set(x, y);
        if (e.mask.count() == 0) throw std::runtime_error("load_atlas: blank glyph " + label_tag(e.label));
        atlas.entries.push_back(std::move(e));
        double prior = je.value("prior", 0.0);
        atlas.priors[atlas.entries.back().label] = prior;
    }
    if (atlas.entries.empty()) throw std::runtime_error("load_atlas: empty atlas");
    atlas.prepare();
    return atlas;
}

void save_atlas(const GlyphAtlas& atlas, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const GlyphEntry& e : atlas.entries) {
        std::string file = label_tag(e.label) + "_" + e.font + ".png";
        write_mask_png((fs::path(dir) / file).string(), e.mask);
        nlohmann::ordered_json je;
        je["label"] = label_tag(e.label);
        je["file"] = file;
        je["font"] = e.font;
        je["aspect"] = e.aspect;
        auto it = atlas.priors.find(e.label);
        je["prior"] = it == atlas.priors.end() ? 0.0 : it->second;
        entries.push_back(je);
    }
    nlohmann::ordered_json j;
    j["glyph_size"] = kGlyphSize;
    j["entries"] = entries;
    std::ofstream out(fs::path(dir) / "manifest.json");
    out << j.dump(2) << "\n";
}

}  // namespace stroketext
