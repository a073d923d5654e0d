#pragma once
// The canned competency questions, CQ1a through CQ5b, each a BGP query run
// against the triple view of a scenario graph. Fixture files with matching
// names ship under fixtures/.

#include "tacio/query.hpp"

#include <map>
#include <string>
#include <vector>

namespace tacio {

inline const std::vector<std::string>& competency_ids() {
    static const std::vector<std::string> ids = {"CQ1a", "CQ1b", "CQ1c", "CQ2a", "CQ2b", "CQ3a",
                                                 "CQ3b", "CQ4a", "CQ4b", "CQ5a", "CQ5b"};
    return ids;
}

inline const std::string& competency_query(const std::string& id) {
    static const std::map<std::string, std::string> queries = {
        {"CQ1a", R"(# TACIO Competency Question 1a
# Who and what takes part when an email moves between machines.
SELECT DISTINCT *
WHERE {
?copy_act a tacio:ActOfCopying ;
    cco:has_input ?source_bearer ;
    cco:has_output ?destination_bearer .
?sender cco:agent_in ?copy_act .
?source_bearer obo:RO_0010002 ?message .
}
)"},
        {"CQ1b", R"(# TACIO Competency Question 1b
# Stored media rendered onto a display.
SELECT DISTINCT *
WHERE {
?display_act a tacio:ActOfCopying ;
    cco:has_input ?storage_bearer ;
    cco:has_output ?display_bearer .
?display_bearer a cco:Monitor ;
    obo:RO_0010002 ?picture .
?compositor cco:agent_in ?display_act .
}
)"},
        {"CQ1c", R"(# TACIO Competency Question 1c
# A filesystem snapshot landing on a backup volume.
SELECT DISTINCT *
WHERE {
?snapshot_act a tacio:ActOfDuplication ;
    cco:has_input ?live_volume ;
    cco:has_output ?backup_copy .
?backup_copy obo:RO_0010002 ?filesystem_image .
}
)"},
        {"CQ2a", R"(# TACIO Competency Question 2a
# Audio and image data from two field sensors, fused by a controller's
# processor into one record that retimes the traffic signals.
SELECT DISTINCT *
WHERE {
?recording_process_1 cco:has_output ?iba_1 .
?iba_1 a cco:AudioRecording ;
    tacio:has_information_descendant_copy ?iba_3 ;
    obo:RO_0010002 ?ice_1 . #is carrier of
?ice_1 cco:describes ?traffic_event_1 .

?recording_process_2 cco:has_output ?iba_2 .
?iba_2 a cco:Image ;
    tacio:has_information_descendant_copy ?iba_4 ;
    obo:RO_0010002 ?ice_2 . #is carrier of
?ice_2 cco:describes ?traffic_event_1 .

?controller_1 a cco:ControlSystem ;
    cco:agent_in ?act_of_timing_change_1 ;
    obo:BFO_0000051 ?processor_1 . #has part
?processor_1 a cco:InformationProcessingArtifact ;
    cco:agent_in ?act_of_processing_1 .
?act_of_processing_1 a tacio:ActOfEncoding ;
    cco:has_output ?iba_5 ;
    cco:has_process_part ?act_of_copying_1 ;
    cco:has_process_part ?act_of_copying_2 .
?act_of_copying_1 a tacio:ActOfCarrierAndConcretizerTransition ;
    cco:has_input ?iba_3 ;
    cco:has_output ?iba_6 .
?act_of_copying_2 a tacio:ActOfCarrierAndConcretizerTransition ;
    cco:has_input ?iba_4 ;
    cco:has_output ?iba_7 .
?act_of_timing_change_1 cco:has_input ?iba_5 .
?iba_5 obo:BFO_0000051 ?iba_6 ; #has part
    obo:BFO_0000051 ?iba_7 ; #has part
    obo:RO_0010002 ?ice_3 . #is carrier of
?ice_3 cco:describes ?traffic_event_1 .
}
)"},
        {"CQ2b", R"(# TACIO Competency Question 2b
# Depth, weather, and temperature readings ingested into one dataset.
SELECT DISTINCT *
WHERE {
?dataset a cco:Dataset ;
    obo:BFO_0000051 ?shard .
?ingest_act a tacio:ActOfCarrierAndConcretizerTransition ;
    cco:has_input ?sensor_record ;
    cco:has_output ?shard .
?sensor_record obo:RO_0010002 ?reading .
?reading cco:describes ?survey .
}
)"},
        {"CQ3a", R"(# TACIO Competency Question 3a
# Ten machines receiving the same message from one origin.
SELECT DISTINCT *
WHERE {
?origin tacio:has_information_descendant_copy ?recipient .
?origin obo:RO_0010002 ?message .
?recipient obo:RO_0010002 ?message .
}
)"},
        {"CQ3b", R"(# TACIO Competency Question 3b
# Distinct drives holding identical snapshots of one volume.
SELECT DISTINCT *
WHERE {
?mirror_act a tacio:ActOfDuplication ;
    cco:has_output ?replica .
?source_volume tacio:has_information_descendant_copy ?replica ;
    obo:RO_0010002 ?system_image .
?replica obo:RO_0010002 ?system_image .
}
)"},
        {"CQ4a", R"(# TACIO Competency Question 4a
# A credential submitted under an encrypting transmission prescription.
SELECT DISTINCT *
WHERE {
?submission cco:prescribed_by ?protocol ;
    cco:has_input ?origin_bearer ;
    cco:has_output ?target_bearer .
?protocol tacio:prescription "encrypted" .
?origin_bearer obo:RO_0010002 ?credential .
}
)"},
        {"CQ4b", R"(# TACIO Competency Question 4b
# The same submission over a cleartext protocol, with the doubt that raises.
SELECT DISTINCT *
WHERE {
?submission cco:prescribed_by ?protocol ;
    cco:has_input ?origin_bearer ;
    cco:has_output ?target_bearer ;
    tacio:hasDefeater ?doubt .
?protocol tacio:prescription "unencrypted" .
?doubt tacio:defeater_kind "undercutting" .
}
)"},
        {"CQ5a", R"(# TACIO Competency Question 5a
# Collaborating authors' views, each answering to the single current version.
SELECT DISTINCT *
WHERE {
?current_version tacio:has_canonical_member ?author_view .
?author_view obo:RO_0010002 ?draft .
?current_version obo:RO_0010002 ?draft .
}
)"},
        {"CQ5b", R"(# TACIO Competency Question 5b
# Working copies of one repository trusted across distinct machines.
SELECT DISTINCT *
WHERE {
?origin_repo tacio:has_canonical_member ?working_copy .
?working_copy obo:RO_0010002 ?code_tree .
}
)"},
    };
    auto it = queries.find(id);
    if (it == queries.end()) {
        throw Error(Errc::unknown_competency_id,
                    "no competency question '" + id + "' (expected CQ1a..CQ5b)");
    }
    return it->second;
}

inline BindingTable run_competency(const std::string& id, const Graph& g,
                                   const CanonicityOptions& opts = {}) {
    BgpQuery query = parse_query(competency_query(id));
    return evaluate(query, to_triples(g, opts));
}

}  // namespace tacio
