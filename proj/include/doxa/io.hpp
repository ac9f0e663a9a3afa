#pragma once

// JSON file formats for models, contraction tables, sphere systems and
// entrenchment relations. Valuations are listed as sorted index lists, with
// atom i standing for bit i of the index; model events list state ids.

#include "doxa/canonical.hpp"
#include "doxa/entrenchment.hpp"
#include "doxa/frame.hpp"
#include "doxa/postulates.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace doxa
{

using json = nlohmann::json;

// Parse errors and missing files become format_error carrying the path.
json read_json_file( const std::filesystem::path& path );

// Every reader throws format_error naming `source` and the first offending field.
pointed_model model_from_json( const json& doc, const std::string& source = "model" );
json model_to_json( const pointed_model& m );

contraction_table table_from_json( const json& doc, const std::string& source = "table" );
json table_to_json( const contraction_table& table );

sphere_system spheres_from_json( const json& doc, const std::string& source = "spheres" );
json spheres_to_json( const sphere_system& system );

entrenchment_relation relation_from_json( const json& doc, const std::string& source = "relation" );
json relation_to_json( const entrenchment_relation& relation );

json event_to_json( const event& e );
// {"worlds": [...], "dnf": "..."}
json theory_to_json( const theory& t, const signature& sig );

pointed_model load_model( const std::filesystem::path& path );
contraction_table load_table( const std::filesystem::path& path );
sphere_system load_spheres( const std::filesystem::path& path );
entrenchment_relation load_relation( const std::filesystem::path& path );

} // namespace doxa
