#include "doxa/io.hpp"

#include "doxa/error.hpp"

#include <algorithm>
#include <fstream>

namespace doxa
{

namespace
{

// Tracks where in a document we are, so errors can name the offending field.
class cursor
{
    const json& _value;
    std::string _source;
    std::string _path;

public:
    cursor( const json& value, std::string source, std::string path )
            : _value{ value }, _source{ std::move( source ) }, _path{ std::move( path ) }
    {
    }

    [[nodiscard]] const json& value() const { return _value; }
    [[nodiscard]] const std::string& path() const { return _path; }

    [[noreturn]] void fail( const std::string& what ) const
    {
        throw format_error( _source + ": " + ( _path.empty() ? std::string( "document" ) : "field '" + _path + "'" ) +
                            ": " + what );
    }

    [[nodiscard]] cursor at( const std::string& key ) const
    {
        if ( !_value.is_object() )
            fail( "expected an object" );
        const auto it = _value.find( key );
        if ( it == _value.end() )
            cursor( _value, _source, join( key ) ).fail( "missing" );
        return cursor( *it, _source, join( key ) );
    }

    [[nodiscard]] bool has( const std::string& key ) const { return _value.is_object() && _value.contains( key ); }

    [[nodiscard]] cursor at( std::size_t i ) const
    {
        return cursor( _value.at( i ), _source, _path + "[" + std::to_string( i ) + "]" );
    }

    [[nodiscard]] std::size_t size() const { return _value.size(); }

    const json& array() const
    {
        if ( !_value.is_array() )
            fail( "expected a list" );
        return _value;
    }

    const json& object() const
    {
        if ( !_value.is_object() )
            fail( "expected an object" );
        return _value;
    }

    [[nodiscard]] std::string string() const
    {
        if ( !_value.is_string() )
            fail( "expected a string" );
        return _value.get<std::string>();
    }

    [[nodiscard]] bool boolean() const
    {
        if ( !_value.is_boolean() )
            fail( "expected true or false" );
        return _value.get<bool>();
    }

    [[nodiscard]] std::uint64_t unsigned_integer() const
    {
        if ( !_value.is_number_unsigned() )
            fail( "expected a non-negative integer" );
        return _value.get<std::uint64_t>();
    }

    [[nodiscard]] cursor member( const std::string& key, const json& value ) const
    {
        return cursor( value, _source, join( key ) );
    }

private:
    [[nodiscard]] std::string join( const std::string& key ) const { return _path.empty() ? key : _path + "." + key; }
};

signature read_signature( const cursor& doc )
{
    const auto atoms = doc.at( "atoms" );
    std::vector<std::string> names;
    for ( std::size_t i = 0; i < atoms.array().size(); ++i )
        names.push_back( atoms.at( i ).string() );
    try
    {
        return signature( std::move( names ) );
    }
    catch ( const format_error& e )
    {
        atoms.fail( e.what() );
    }
}

event read_valuations( const cursor& c, const signature& sig )
{
    auto out = event::empty_of( sig );
    for ( std::size_t i = 0; i < c.array().size(); ++i )
    {
        const auto item = c.at( i );
        const auto v = item.unsigned_integer();
        if ( v >= sig.valuation_count() )
            item.fail( "valuation " + std::to_string( v ) + " is outside W" );
        out.insert( v );
    }
    return out;
}

using id_map = std::map<std::string, state_index>;

state_index read_state( const cursor& c, const id_map& ids )
{
    const auto id = c.string();
    const auto it = ids.find( id );
    if ( it == ids.end() )
        c.fail( "unknown state '" + id + "'" );
    return it->second;
}

state_set read_states( const cursor& c, const id_map& ids )
{
    state_set out;
    for ( std::size_t i = 0; i < c.array().size(); ++i )
        out.insert( read_state( c.at( i ), ids ) );
    return out;
}

ranking read_ranking( const cursor& c, const id_map& ids )
{
    ranking tiers;
    for ( std::size_t i = 0; i < c.array().size(); ++i )
        tiers.push_back( read_states( c.at( i ), ids ) );
    return tiers;
}

json states_to_json( state_set s, const pointed_model& m )
{
    auto out = json::array();
    for ( const auto i : s.members() )
        out.push_back( m.states()[ i ].id );
    return out;
}

json ranking_to_json( const ranking& tiers, const pointed_model& m )
{
    auto out = json::array();
    for ( const auto tier : tiers )
        out.push_back( states_to_json( tier, m ) );
    return out;
}

// Re-raises structural model errors against the field they concern.
template <typename Fn>
auto guarded( const cursor& c, Fn&& fn ) -> decltype( fn() )
{
    try
    {
        return fn();
    }
    catch ( const format_error& e )
    {
        c.fail( e.what() );
    }
}

} // namespace

json read_json_file( const std::filesystem::path& path )
{
    std::ifstream in( path );
    if ( !in )
        throw format_error( path.string() + ": cannot open file" );
    try
    {
        return json::parse( in );
    }
    catch ( const json::parse_error& e )
    {
        throw format_error( path.string() + ": not valid JSON (" + e.what() + ")" );
    }
}

json event_to_json( const event& e )
{
    return json( e.indices() );
}

json theory_to_json( const theory& t, const signature& sig )
{
    return json{ { "worlds", event_to_json( t.worlds() ) },
                 { "dnf", to_string( synthesize_formula( t.worlds(), sig ), sig ) } };
}

pointed_model model_from_json( const json& doc, const std::string& source )
{
    const cursor root( doc, source, "" );
    root.object();
    auto sig = read_signature( root );

    const auto states_field = root.at( "states" );
    std::vector<state> states;
    id_map ids;
    for ( std::size_t i = 0; i < states_field.array().size(); ++i )
    {
        const auto entry = states_field.at( i );
        const auto id_field = entry.at( "id" );
        auto id = id_field.string();
        if ( id.empty() )
            id_field.fail( "state ids must be nonempty" );
        if ( !ids.emplace( id, i ).second )
            id_field.fail( "duplicate state id '" + id + "'" );

        const auto val_field = entry.at( "val" );
        val_field.object();
        valuation v = 0;
        for ( std::size_t a = 0; a < sig.size(); ++a )
            if ( val_field.at( sig.name( a ) ).boolean() )
                v |= valuation{ 1 } << a;
        for ( const auto& [ key, _ ] : val_field.value().items() )
            if ( !sig.index_of( key ) )
                val_field.member( key, val_field.value()[ key ] ).fail( "not an atom of the signature" );
        states.push_back( { std::move( id ), v } );
    }
    if ( states.empty() )
        states_field.fail( "a model needs at least one state" );
    if ( states.size() > state_set::max_states )
        states_field.fail( "at most 64 states are supported" );

    const auto actual = read_state( root.at( "actual" ), ids );

    const auto belief_field = root.at( "belief" );
    belief_field.object();
    std::vector<state_set> belief( states.size() );
    for ( const auto& s : states )
        belief[ ids.at( s.id ) ] = read_states( belief_field.at( s.id ), ids );
    for ( const auto& [ key, _ ] : belief_field.value().items() )
        if ( !ids.contains( key ) )
            belief_field.member( key, belief_field.value()[ key ] ).fail( "unknown state '" + key + "'" );

    const auto selection_field = root.at( "selection" );
    selection_field.object();
    selection_function selection;
    if ( selection_field.has( "preorder" ) )
    {
        const auto preorder = selection_field.at( "preorder" );
        preorder.object();
        if ( preorder.has( "shared" ) )
        {
            selection = selection_function(
                    selection_function::shared_preorder{ read_ranking( preorder.at( "shared" ), ids ) } );
        }
        else if ( preorder.has( "per_state" ) )
        {
            const auto per_state = preorder.at( "per_state" );
            selection_function::per_state_preorder tiers;
            for ( const auto& [ key, _ ] : per_state.object().items() )
            {
                const auto field = per_state.at( key );
                const auto s = read_state( per_state.member( key, json( key ) ), ids );
                tiers.tiers.emplace( s, read_ranking( field, ids ) );
            }
            selection = selection_function( std::move( tiers ) );
        }
        else
        {
            preorder.fail( "expected 'shared' or 'per_state'" );
        }
    }
    else if ( selection_field.has( "table" ) )
    {
        const auto rows = selection_field.at( "table" );
        selection_function::explicit_table table;
        for ( std::size_t i = 0; i < rows.array().size(); ++i )
        {
            const auto row = rows.at( i );
            const auto s = read_state( row.at( "state" ), ids );
            const auto e = read_states( row.at( "event" ), ids );
            if ( e.empty() )
                row.at( "event" ).fail( "selection is defined on nonempty events only" );
            if ( !table.entries.emplace( std::pair{ s, e }, read_states( row.at( "selected" ), ids ) ).second )
                row.fail( "duplicate entry for this state and event" );
        }
        selection = selection_function( std::move( table ) );
    }
    else
    {
        selection_field.fail( "expected 'preorder' or 'table'" );
    }

    std::map<state_index, state_index> bridge;
    if ( root.has( "bridge" ) )
    {
        const auto bridge_field = root.at( "bridge" );
        for ( const auto& [ key, _ ] : bridge_field.object().items() )
            bridge.emplace( read_state( bridge_field.member( key, json( key ) ), ids ),
                            read_state( bridge_field.at( key ), ids ) );
    }

    return guarded( root, [ & ] {
        return pointed_model( std::move( sig ), std::move( states ), actual, std::move( belief ),
                              std::move( selection ), std::move( bridge ) );
    } );
}

json model_to_json( const pointed_model& m )
{
    const auto& sig = m.sig();
    json doc;
    doc[ "atoms" ] = sig.atoms();

    auto states = json::array();
    for ( const auto& s : m.states() )
    {
        json val = json::object();
        for ( std::size_t a = 0; a < sig.size(); ++a )
            val[ sig.name( a ) ] = ( ( s.val >> a ) & 1U ) != 0;
        states.push_back( { { "id", s.id }, { "val", val } } );
    }
    doc[ "states" ] = states;
    doc[ "actual" ] = m.states()[ m.actual() ].id;

    json belief = json::object();
    for ( std::size_t i = 0; i < m.size(); ++i )
        belief[ m.states()[ i ].id ] = states_to_json( m.belief( i ), m );
    doc[ "belief" ] = belief;

    const auto& repr = m.selection().repr();
    if ( const auto* shared = std::get_if<selection_function::shared_preorder>( &repr ) )
    {
        doc[ "selection" ] = { { "preorder", { { "shared", ranking_to_json( shared->tiers, m ) } } } };
    }
    else if ( const auto* per_state = std::get_if<selection_function::per_state_preorder>( &repr ) )
    {
        json tiers = json::object();
        for ( const auto& [ s, r ] : per_state->tiers )
            tiers[ m.states()[ s ].id ] = ranking_to_json( r, m );
        doc[ "selection" ] = { { "preorder", { { "per_state", tiers } } } };
    }
    else
    {
        auto rows = json::array();
        for ( const auto& [ key, selected ] : std::get<selection_function::explicit_table>( repr ).entries )
            rows.push_back( { { "state", m.states()[ key.first ].id },
                              { "event", states_to_json( key.second, m ) },
                              { "selected", states_to_json( selected, m ) } } );
        doc[ "selection" ] = { { "table", rows } };
    }

    if ( !m.bridge().empty() )
    {
        json bridge = json::object();
        for ( const auto& [ from, to ] : m.bridge() )
            bridge[ m.states()[ from ].id ] = m.states()[ to ].id;
        doc[ "bridge" ] = bridge;
    }
    return doc;
}

contraction_table table_from_json( const json& doc, const std::string& source )
{
    const cursor root( doc, source, "" );
    root.object();
    auto sig = read_signature( root );
    if ( sig.size() > max_table_atoms )
        root.at( "atoms" ).fail( "contraction tables support at most 3 atoms" );

    contraction_table table{ sig, theory( read_valuations( root.at( "K" ), sig ) ), {}, false };
    if ( root.has( "partial" ) )
        table.partial = root.at( "partial" ).boolean();

    const auto entries = root.at( "entries" );
    for ( std::size_t i = 0; i < entries.array().size(); ++i )
    {
        const auto row = entries.at( i );
        auto phi = read_valuations( row.at( "phi" ), sig );
        auto result = read_valuations( row.at( "result" ), sig );
        if ( !table.entries.emplace( std::move( phi ), theory( std::move( result ) ) ).second )
            row.at( "phi" ).fail( "duplicate entry for this event" );
    }
    if ( !table.partial && !table.total() )
    {
        const auto width = sig.valuation_count();
        for ( std::uint64_t e = 0; e < ( std::uint64_t{ 1 } << width ); ++e )
            if ( !table.entries.contains( event::from_mask( width, e ) ) )
                entries.fail( "table is not declared partial but has no entry for phi = " +
                              to_string( event::from_mask( width, e ) ) );
    }
    return table;
}

json table_to_json( const contraction_table& table )
{
    json doc;
    doc[ "atoms" ] = table.sig.atoms();
    doc[ "K" ] = event_to_json( table.k.worlds() );
    std::vector<std::pair<std::uint64_t, const theory*>> rows;
    for ( const auto& [ phi, result ] : table.entries )
        rows.emplace_back( phi.to_mask(), &result );
    std::sort( rows.begin(), rows.end(), []( const auto& a, const auto& b ) { return a.first < b.first; } );
    auto entries = json::array();
    const auto width = table.sig.valuation_count();
    for ( const auto& [ mask, result ] : rows )
        entries.push_back(
                { { "phi", event_to_json( event::from_mask( width, mask ) ) }, { "result", event_to_json( result->worlds() ) } } );
    doc[ "entries" ] = entries;
    if ( table.partial )
        doc[ "partial" ] = true;
    return doc;
}

sphere_system spheres_from_json( const json& doc, const std::string& source )
{
    const cursor root( doc, source, "" );
    root.object();
    sphere_system system{ read_signature( root ), {} };
    const auto spheres = root.at( "spheres" );
    for ( std::size_t i = 0; i < spheres.array().size(); ++i )
        system.spheres.push_back( read_valuations( spheres.at( i ), system.sig ) );
    guarded( spheres, [ & ] { check_spheres( system ); } );
    return system;
}

json spheres_to_json( const sphere_system& system )
{
    json doc;
    doc[ "atoms" ] = system.sig.atoms();
    auto spheres = json::array();
    for ( const auto& s : system.spheres )
        spheres.push_back( event_to_json( s ) );
    doc[ "spheres" ] = spheres;
    return doc;
}

entrenchment_relation relation_from_json( const json& doc, const std::string& source )
{
    const cursor root( doc, source, "" );
    root.object();
    auto sig = read_signature( root );
    if ( sig.size() > max_table_atoms )
        root.at( "atoms" ).fail( "entrenchment relations support at most 3 atoms" );
    entrenchment_relation relation( sig, theory( read_valuations( root.at( "K" ), sig ) ) );
    const auto pairs = root.at( "pairs" );
    for ( std::size_t i = 0; i < pairs.array().size(); ++i )
    {
        const auto le = pairs.at( i ).at( "le" );
        if ( le.array().size() != 2 )
            le.fail( "expected [phi, psi]" );
        relation.add( read_valuations( le.at( 0 ), sig ), read_valuations( le.at( 1 ), sig ) );
    }
    return relation;
}

json relation_to_json( const entrenchment_relation& relation )
{
    json doc;
    doc[ "atoms" ] = relation.sig().atoms();
    doc[ "K" ] = event_to_json( relation.k().worlds() );
    auto pairs = json::array();
    for ( const auto& [ phi, psi ] : relation.pairs() )
        pairs.push_back( { { "le", json::array( { event_to_json( phi ), event_to_json( psi ) } ) } } );
    doc[ "pairs" ] = pairs;
    return doc;
}

pointed_model load_model( const std::filesystem::path& path )
{
    return model_from_json( read_json_file( path ), path.string() );
}

contraction_table load_table( const std::filesystem::path& path )
{
    return table_from_json( read_json_file( path ), path.string() );
}

sphere_system load_spheres( const std::filesystem::path& path )
{
    return spheres_from_json( read_json_file( path ), path.string() );
}

entrenchment_relation load_relation( const std::filesystem::path& path )
{
    return relation_from_json( read_json_file( path ), path.string() );
}

} // namespace doxa
