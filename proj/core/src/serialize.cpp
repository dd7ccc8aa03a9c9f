#include "slocal/serialize.hpp"

namespace slocal {

using nlohmann::json;

json ring_to_json(const Ring& ring) {
  return json{{"char", ring.characteristic() == Characteristic::zero ? "zero" : "positive"},
              {"p", ring.residue_char()},
              {"precision", ring.precision()}};
}

Ring ring_from_json(const json& j) {
  const std::string chr = j.at("char").get<std::string>();
  if (chr != "zero" && chr != "positive")
    throw Error(Errc::bad_argument, "ring char must be \"zero\" or \"positive\"");
  return make_ring(chr == "zero" ? Characteristic::zero : Characteristic::positive,
                   j.at("p").get<std::uint64_t>(), j.at("precision").get<unsigned>());
}

json elem_to_json(const RingElem& e) {
  if (e.ring().characteristic() == Characteristic::zero) return e.residue().get_str();
  return json(e.coefficients());
}

RingElem elem_from_json(const Ring& ring, const json& j) {
  if (ring.characteristic() == Characteristic::zero) {
    if (j.is_number_integer()) return ring.from_integer(static_cast<long>(j.get<std::int64_t>()));
    if (!j.is_string()) throw Error(Errc::bad_argument, "expected a decimal element string");
    try {
      return ring.from_integer(mpz_class(j.get<std::string>()));
    } catch (const std::invalid_argument&) {
      throw Error(Errc::bad_argument, "malformed decimal element string");
    }
  }
  if (!j.is_array()) throw Error(Errc::bad_argument, "expected a coefficient array");
  return ring.from_coefficients(j.get<std::vector<std::int64_t>>());
}

json matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(elem_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix matrix_from_json(const Ring& ring, const json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::bad_argument, "expected a matrix array");
  const int n = static_cast<int>(j.size());
  RMatrix m(ring, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
      throw Error(Errc::bad_argument, "matrix rows must all have the matrix dimension");
    for (int c = 0; c < n; ++c) m.set(r, c, elem_from_json(ring, j[r][c]));
  }
  return m;
}

json word_to_json(const ElementaryWord& w) {
  json letters = json::array();
  for (const Letter& l : w.letters())
    letters.push_back(json{{"i", l.i}, {"j", l.j}, {"x", elem_to_json(l.x)}});
  return letters;
}

ElementaryWord word_from_json(const Ring& ring, int n, const json& j) {
  if (!j.is_array()) throw Error(Errc::bad_argument, "expected an array of letters");
  ElementaryWord w(ring, n);
  for (const auto& l : j)
    w.push_back(l.at("i").get<int>(), l.at("j").get<int>(), elem_from_json(ring, l.at("x")));
  return w;
}

json poly_to_json(const Polynomial& f) {
  json coeffs = json::array();
  for (const RingElem& c : f.coeffs) coeffs.push_back(elem_to_json(c));
  return coeffs;
}

Polynomial poly_from_json(const Ring& ring, const json& j) {
  if (!j.is_array()) throw Error(Errc::bad_argument, "expected a coefficient array");
  Polynomial f{ring, {}};
  for (const auto& c : j) f.coeffs.push_back(elem_from_json(ring, c));
  return f;
}

json rational_to_json(const mpq_class& x) { return x.get_str(); }

mpq_class rational_from_json(const json& j) {
  mpq_class x;
  if (j.is_number_integer()) {
    x = static_cast<long>(j.get<std::int64_t>());
    return x;
  }
  if (!j.is_string()) throw Error(Errc::bad_argument, "expected a rational string \"a/b\"");
  try {
    x = mpq_class(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw Error(Errc::bad_argument, "malformed rational string");
  }
  x.canonicalize();
  return x;
}

json qmatrix_to_json(const QMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(rational_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMatrix qmatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::bad_argument, "expected a matrix array");
  const int n = static_cast<int>(j.size());
  QMatrix m(n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
      throw Error(Errc::bad_argument, "matrix rows must all have the matrix dimension");
    for (int c = 0; c < n; ++c) m.set(r, c, rational_from_json(j[r][c]));
  }
  return m;
}

json subspace_to_json(const Subspace& s) {
  json rows = json::array();
  for (const auto& row : s.basis()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(rational_to_json(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

Subspace subspace_from_json(int ambient, const json& j) {
  if (!j.is_array()) throw Error(Errc::bad_argument, "expected an array of basis rows");
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& r : j) {
    std::vector<mpq_class> row;
    for (const auto& x : r) row.push_back(rational_from_json(x));
    rows.push_back(std::move(row));
  }
  return Subspace::from_rows(ambient, std::move(rows));
}

json flag_to_json(const Flag& f) {
  json spaces = json::array();
  for (const Subspace& s : f.spaces()) spaces.push_back(subspace_to_json(s));
  return spaces;
}

Flag flag_from_json(int ambient, const json& j) {
  if (!j.is_array()) throw Error(Errc::bad_argument, "expected an array of subspaces");
  std::vector<Subspace> spaces;
  for (const auto& s : j) spaces.push_back(subspace_from_json(ambient, s));
  return Flag(ambient, std::move(spaces));
}

json finite_mat_to_json(const FiniteMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json rep_to_json(const RepDescription& rep) {
  json gens = json::array();
  for (const auto& gi : rep.generator_images) {
    gens.push_back(json{{"generator", finite_mat_to_json(gi.generator)},
                        {"angle_multiple", gi.angle_multiple},
                        {"rotation_display", rotation_block_display(rep, gi.angle_multiple)}});
  }
  return json{{"p", rep.p},
              {"k", rep.k},
              {"cyclic_order", rep.cyclic_order},
              {"dim", rep.target_dim},
              {"generator_images", std::move(gens)}};
}

}  // namespace slocal
