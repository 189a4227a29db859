#include "nsv/scenario.hpp"

namespace nsv {

namespace {

// Uniform-superposition routing scenario measured in both bases.
const char* kQutritDefault = R"({
  "version": "1",
  "entries": [
    {"qutrit": {"beta": [[0.5773502691896258, 0], [0.5773502691896258, 0], [0.5773502691896258, 0]],
                "a": 1.0, "b": 2.0, "context": "Y1", "tol": 1e-12, "seed": 7}},
    {"qutrit": {"beta": [[0.5773502691896258, 0], [0.5773502691896258, 0], [0.5773502691896258, 0]],
                "a": 1.0, "b": 2.0, "context": "Y2", "tol": 1e-12, "seed": 7}}
  ]
})";

// Maximally entangled pair; Alice switches between the computational and
// the conjugate basis while Bob watches his marginals.
const char* kBellZx = R"({
  "version": "1",
  "entries": [
    {"bipartite": {
      "state": {"bell": "phi+"},
      "partition": {"dims": [2, 2]},
      "instruments": [
        {"projective": [[0], [1]]},
        {"projective": [
          [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]],
          [[[0.5, 0], [-0.5, 0]], [[-0.5, 0], [0.5, 0]]]
        ]}
      ],
      "b_split": {"blocks": [[0], [1]]},
      "tol": 1e-10
    }}
  ]
})";

const char* kPrBox = R"({
  "version": "1",
  "entries": [
    {"box": {"x": 2, "y": 2, "a": 2, "b": 2, "tol": 0.0,
      "table": [
        [[[0.5, 0.0], [0.0, 0.5]], [[0.5, 0.0], [0.0, 0.5]]],
        [[[0.5, 0.0], [0.0, 0.5]], [[0.0, 0.5], [0.5, 0.0]]]
      ]}}
  ]
})";

// Quantum box at the Tsirelson point (Bell pair, optimal angle choices).
const char* kTsirelsonBox = R"({
  "version": "1",
  "entries": [
    {"box": {"x": 2, "y": 2, "a": 2, "b": 2, "tol": 1e-10,
      "table": [
        [[[0.42677669529663687, 0.0732233047033631], [0.0732233047033631, 0.42677669529663687]],
         [[0.42677669529663687, 0.0732233047033631], [0.0732233047033631, 0.42677669529663687]]],
        [[[0.42677669529663687, 0.0732233047033631], [0.0732233047033631, 0.42677669529663687]],
         [[0.0732233047033631, 0.42677669529663687], [0.42677669529663687, 0.0732233047033631]]]
      ]}}
  ]
})";

}  // namespace

const std::map<std::string, std::string>& bundled_fixtures() {
    static const std::map<std::string, std::string> fixtures = {
        {"qutrit_default", kQutritDefault},
        {"bell_zx", kBellZx},
        {"pr_box", kPrBox},
        {"tsirelson_box", kTsirelsonBox},
    };
    return fixtures;
}

}  // namespace nsv
