#ifndef KG_TESTS_CORPUS_HPP
#define KG_TESTS_CORPUS_HPP

#include <string>

#include "kg/kgraph.hpp"
#include "kg/path.hpp"

namespace kgtest {

inline std::string corpus_file(const std::string& name) {
    return std::string(KG_CORPUS_DIR) + "/" + name + ".kg";
}

inline kg::KGraph load(const std::string& name) {
    return kg::load_kgraph(corpus_file(name));
}

inline kg::VertexId vx(const kg::KGraph& g, const std::string& id) {
    return *g.find_vertex(id);
}

inline kg::Path pp(const kg::KGraph& g, const std::string& text) {
    return kg::parse_path(g, text);
}

inline const char* const kAllCorpus[] = {"omega22",   "cycle2",    "cycle1_entrance",
                                         "parallel2", "disjoint2", "flipcomm",
                                         "fliptwist"};

}  // namespace kgtest

#endif  // KG_TESTS_CORPUS_HPP
