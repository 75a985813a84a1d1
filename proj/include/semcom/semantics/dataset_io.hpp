#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "semcom/errors.hpp"
#include "semcom/semantics/triplet.hpp"

namespace semcom::sem {

namespace fs = std::filesystem;

/// Reads a heatmap grid file: a "H W" header line, then H rows of W decimal
/// values.
inline Heatmap load_heatmap(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path.string(), -1, "", "cannot open heatmap file");
    int h = 0, w = 0;
    std::string header;
    if (!std::getline(in, header))
        throw parse_error(path.string(), 1, "header", "missing 'H W' header");
    {
        std::istringstream hs(header);
        if (!(hs >> h >> w) || h <= 0 || w <= 0)
            throw parse_error(path.string(), 1, "header", "expected positive 'H W'");
    }
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(h) * w);
    for (int row = 0; row < h; ++row) {
        std::string line;
        if (!std::getline(in, line))
            throw parse_error(path.string(), row + 2, "grid", "unexpected end of file");
        std::istringstream ls(line);
        for (int col = 0; col < w; ++col) {
            double v;
            if (!(ls >> v))
                throw parse_error(path.string(), row + 2, "grid",
                                  "expected " + std::to_string(w) + " values");
            vals.push_back(v);
        }
    }
    try {
        return Heatmap(w, h, std::move(vals));
    } catch (const shape_error& e) {
        throw parse_error(path.string(), -1, "grid", e.what());
    }
}

inline void save_heatmap(const Heatmap& hm, const fs::path& path) {
    hm.validate();
    std::ofstream out(path);
    if (!out) throw parse_error(path.string(), -1, "", "cannot write heatmap file");
    out << hm.height << " " << hm.width << "\n";
    char buf[32];
    for (int y = 0; y < hm.height; ++y) {
        for (int x = 0; x < hm.width; ++x) {
            std::snprintf(buf, sizeof buf, "%.17g", hm.at(x, y));
            out << buf << (x + 1 == hm.width ? "" : " ");
        }
        out << "\n";
    }
}

namespace detail {

using nlohmann::json;

inline const json& field(const json& j, const char* key, const std::string& file,
                         const std::string& ctx) {
    const auto it = j.find(key);
    if (it == j.end())
        throw parse_error(file, -1, ctx + "." + key, "missing field");
    return *it;
}

inline Box parse_box(const json& j, const std::string& file, const std::string& ctx) {
    if (!j.is_array() || j.size() != 4)
        throw parse_error(file, -1, ctx, "box must be [x0, y0, x1, y1]");
    return Box{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

inline TripletPattern parse_pattern(const json& j, const std::string& file,
                                    const std::string& ctx) {
    return TripletPattern{field(j, "subject", file, ctx).get<std::string>(),
                          field(j, "relation", file, ctx).get<std::string>(),
                          field(j, "object", file, ctx).get<std::string>()};
}

}  // namespace detail

/// Loads a dataset manifest (JSON) plus all referenced heatmap grid files;
/// heatmap paths are relative to the manifest's directory. The assembled
/// dataset is fully validated before being returned.
inline Dataset load_dataset(const fs::path& manifest_path) {
    using detail::field;
    using nlohmann::json;
    std::ifstream in(manifest_path);
    if (!in)
        throw parse_error(manifest_path.string(), -1, "", "cannot open manifest");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(manifest_path.string(), -1, "",
                          std::string("JSON syntax: ") + e.what());
    }
    const std::string mf = manifest_path.string();
    const fs::path base = manifest_path.parent_path();
    Dataset ds;
    try {
        for (const auto& ji : field(j, "images", mf, "manifest")) {
            ImageRecord img;
            img.id = field(ji, "id", mf, "image").get<std::string>();
            img.size_bytes = field(ji, "size_bytes", mf, "image").get<long>();
            for (const auto& jt : field(ji, "triplets", mf, "image " + img.id)) {
                const std::string ctx = "image " + img.id + " triplet";
                Triplet t;
                t.pattern = detail::parse_pattern(jt, mf, ctx);
                t.box_sub = detail::parse_box(field(jt, "box_sub", mf, ctx), mf, ctx);
                t.box_obj = detail::parse_box(field(jt, "box_obj", mf, ctx), mf, ctx);
                t.h_sub = load_heatmap(base / field(jt, "h_sub", mf, ctx).get<std::string>());
                t.h_obj = load_heatmap(base / field(jt, "h_obj", mf, ctx).get<std::string>());
                img.triplets.push_back(std::move(t));
            }
            ds.images.push_back(std::move(img));
        }
        for (const auto& ju : field(j, "users", mf, "manifest")) {
            UserProfile u;
            u.user_id = field(ju, "id", mf, "user").get<int>();
            const std::string ctx = "user " + std::to_string(u.user_id);
            u.query = detail::parse_pattern(field(ju, "query", mf, ctx), mf, ctx);
            for (const auto& [img_id, rel] :
                 field(ju, "saliency", mf, ctx).items())
                u.saliency[img_id] = load_heatmap(base / rel.get<std::string>());
            ds.users.push_back(std::move(u));
        }
    } catch (const json::exception& e) {
        throw parse_error(mf, -1, "", std::string("JSON structure: ") + e.what());
    }
    ds.validate();
    return ds;
}

/// Writes manifest.json plus heatmap grid files under dir/heatmaps/.
/// Round-trips exactly (grids are written with 17 significant digits).
inline fs::path save_dataset(const Dataset& ds, const fs::path& dir) {
    ds.validate();
    fs::create_directories(dir / "heatmaps");
    using nlohmann::json;
    json j;
    j["images"] = json::array();
    for (std::size_t i = 0; i < ds.images.size(); ++i) {
        const auto& img = ds.images[i];
        json ji;
        ji["id"] = img.id;
        ji["size_bytes"] = img.size_bytes;
        ji["triplets"] = json::array();
        for (std::size_t t = 0; t < img.triplets.size(); ++t) {
            const auto& tr = img.triplets[t];
            const std::string stem = img.id + "_t" + std::to_string(t);
            save_heatmap(tr.h_sub, dir / "heatmaps" / (stem + "_sub.hm"));
            save_heatmap(tr.h_obj, dir / "heatmaps" / (stem + "_obj.hm"));
            json jt;
            jt["subject"] = tr.pattern.subject;
            jt["relation"] = tr.pattern.relation;
            jt["object"] = tr.pattern.object;
            jt["box_sub"] = {tr.box_sub.x0, tr.box_sub.y0, tr.box_sub.x1, tr.box_sub.y1};
            jt["box_obj"] = {tr.box_obj.x0, tr.box_obj.y0, tr.box_obj.x1, tr.box_obj.y1};
            jt["h_sub"] = "heatmaps/" + stem + "_sub.hm";
            jt["h_obj"] = "heatmaps/" + stem + "_obj.hm";
            ji["triplets"].push_back(std::move(jt));
        }
        j["images"].push_back(std::move(ji));
    }
    j["users"] = json::array();
    for (const auto& u : ds.users) {
        json ju;
        ju["id"] = u.user_id;
        ju["query"] = {{"subject", u.query.subject},
                       {"relation", u.query.relation},
                       {"object", u.query.object}};
        json sal;
        for (const auto& [img_id, hm] : u.saliency) {
            const std::string rel =
                "heatmaps/u" + std::to_string(u.user_id) + "_" + img_id + ".hm";
            save_heatmap(hm, dir / rel);
            sal[img_id] = rel;
        }
        ju["saliency"] = std::move(sal);
        j["users"].push_back(std::move(ju));
    }
    const fs::path manifest = dir / "manifest.json";
    std::ofstream out(manifest);
    if (!out) throw parse_error(manifest.string(), -1, "", "cannot write manifest");
    out << j.dump(2) << "\n";
    return manifest;
}

}  // namespace semcom::sem
