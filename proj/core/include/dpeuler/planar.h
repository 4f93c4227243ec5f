// Copyright 2026 The dpeuler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPEULER_PLANAR_H_
#define DPEULER_PLANAR_H_

#include <cmath>
#include <ostream>

namespace dpeuler {

// A point in planar coordinates, in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << "(" << p.x << ", " << p.y << ")";
  }
};

inline double Cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double Dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

// Cross product of (b - o) and (c - o); positive when o, b, c turn left.
inline double Orient(Point o, Point b, Point c) { return Cross(b - o, c - o); }

inline double SquaredDistance(Point a, Point b) {
  const Point d = a - b;
  return Dot(d, d);
}
inline double Distance(Point a, Point b) {
  return std::sqrt(SquaredDistance(a, b));
}

// Closed axis-aligned rectangle [min.x, max.x] x [min.y, max.y]. Segments and
// points are represented as degenerate rectangles.
struct Rect {
  Point min;
  Point max;

  friend bool operator==(const Rect&, const Rect&) = default;
  bool Contains(Point p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

}  // namespace dpeuler

#endif  // DPEULER_PLANAR_H_
