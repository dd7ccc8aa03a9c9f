#pragma once

#include <nlohmann/json.hpp>

#include "slocal/congruence.hpp"
#include "slocal/flags.hpp"
#include "slocal/hensel.hpp"
#include "slocal/matgroup.hpp"

namespace slocal {

// Wire formats:
//   ring      {"char": "zero"|"positive", "p": int, "precision": int}
//   element   decimal string (characteristic zero) or coefficient array
//   matrix    row-major array of element encodings
//   word      array of {"i": int, "j": int, "x": element}
//   poly      array of element encodings, lowest degree first
//   qmatrix   row-major array of rational strings "a/b"
//   subspace  array of basis rows (rational strings)
//   flag      array of subspaces, ascending

nlohmann::json ring_to_json(const Ring& ring);
Ring ring_from_json(const nlohmann::json& j);

nlohmann::json elem_to_json(const RingElem& e);
RingElem elem_from_json(const Ring& ring, const nlohmann::json& j);

nlohmann::json matrix_to_json(const RMatrix& m);
RMatrix matrix_from_json(const Ring& ring, const nlohmann::json& j);

nlohmann::json word_to_json(const ElementaryWord& w);
ElementaryWord word_from_json(const Ring& ring, int n, const nlohmann::json& j);

nlohmann::json poly_to_json(const Polynomial& f);
Polynomial poly_from_json(const Ring& ring, const nlohmann::json& j);

nlohmann::json rational_to_json(const mpq_class& x);
mpq_class rational_from_json(const nlohmann::json& j);

nlohmann::json qmatrix_to_json(const QMatrix& m);
QMatrix qmatrix_from_json(const nlohmann::json& j);

nlohmann::json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(int ambient, const nlohmann::json& j);

nlohmann::json flag_to_json(const Flag& f);
Flag flag_from_json(int ambient, const nlohmann::json& j);

nlohmann::json finite_mat_to_json(const FiniteMat& m);
nlohmann::json rep_to_json(const RepDescription& rep);

}  // namespace slocal
