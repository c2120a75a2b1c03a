#pragma once

// Diagrams shared by the unit tests and the acceptance checks.
namespace fixtures {

// The G14 polytope; nodes 0 and 1 are joined by the dotted edge of weight d.
inline constexpr const char* kG14 = R"(diagram G14
nodes 9
edge 0 1 dotted w=2 + sqrt(5)
edge 0 8 m=4
edge 1 3 m=4
edge 2 3 m=5
edge 3 6 m=3
edge 4 5 m=3
edge 4 8 m=3
edge 5 6 m=3
edge 7 8 m=5
)";

inline constexpr const char* kG14Symbolic = R"(diagram G14
nodes 9
edge 0 1 dotted
edge 0 8 m=4
edge 1 3 m=4
edge 2 3 m=5
edge 3 6 m=3
edge 4 5 m=3
edge 4 8 m=3
edge 5 6 m=3
edge 7 8 m=5
)";

// Worked example over the pentagon (1,1,2,1,2): two edges labeled 8 and a dotted edge of weight 1+sqrt(2).
inline constexpr const char* kExample = R"(diagram example
nodes 7
edge 0 1 m=8
edge 1 2 m=3
edge 1 6 m=4
edge 2 4 m=3
edge 3 4 m=8
edge 4 5 m=4
edge 5 6 dotted w=1 + sqrt(2)
)";

}  // namespace fixtures
