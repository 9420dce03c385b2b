"""Deterministic SVG renderings of the spirals.

Coordinates are rounded to 1e-4 user units, elements are emitted in a
fixed order, and nothing time- or environment-dependent enters the
output, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import math

from . import factorlab, numberspiral, spiral
from .quad import ArmSystem

_PALETTE = ("#d4442c", "#2c6fd4", "#2ca05a", "#b06fd4", "#d49a2c", "#2cb5b5")


def _fmt(x: float) -> str:
    """Fixed-precision coordinate: 4 decimals, trailing zeros trimmed."""
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, size: float, half_extent: float) -> None:
        self.size = size
        self.scale = size / (2.0 * half_extent)
        self.elements: list[str] = []

    def _xy(self, x: float, y: float) -> tuple[str, str]:
        # +y up in math coordinates, down in SVG
        return _fmt(self.size / 2 + x * self.scale), _fmt(self.size / 2 - y * self.scale)

    def circle(self, x: float, y: float, r: float, fill: str) -> None:
        cx, cy = self._xy(x, y)
        self.elements.append(f'<circle cx="{cx}" cy="{cy}" r="{_fmt(r)}" fill="{fill}"/>')

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str, width: float) -> None:
        a, b = self._xy(x1, y1)
        c, d = self._xy(x2, y2)
        self.elements.append(
            f'<line x1="{a}" y1="{b}" x2="{c}" y2="{d}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>'
        )

    def polyline(self, pts: list[tuple[float, float]], stroke: str, width: float) -> None:
        coords = " ".join(",".join(self._xy(x, y)) for x, y in pts)
        self.elements.append(
            f'<polyline points="{coords}" fill="none" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>'
        )

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(self.size)}" '
            f'height="{_fmt(self.size)}" viewBox="0 0 {_fmt(self.size)} {_fmt(self.size)}">\n'
            f'<rect width="{_fmt(self.size)}" height="{_fmt(self.size)}" fill="white"/>\n'
        )
        return head + "\n".join(self.elements) + "\n</svg>\n"


def _sqrt_xy(n: int) -> tuple[float, float]:
    pt = spiral.polar_of(n)
    return pt.radius * math.cos(pt.angle_total), pt.radius * math.sin(pt.angle_total)


def plot_sqrt_spiral(n: int, size: float = 800.0) -> str:
    """The triangle chain itself: rays, outer edge, primes and squares marked."""
    cv = _Canvas(size, math.sqrt(n) * 1.05 + 1.0)
    pts = [_sqrt_xy(k) for k in range(1, n + 1)]
    for x, y in pts:
        cv.line(0.0, 0.0, x, y, "#cccccc", 0.5)
    cv.polyline(pts, "#555555", 1.0)
    for k, (x, y) in enumerate(pts, start=1):
        root = math.isqrt(k)
        if root * root == k:
            cv.circle(x, y, 4.0, "#2ca05a")
        elif factorlab.is_prime(k):
            cv.circle(x, y, 3.0, "#d4a800")
    return cv.render()


def plot_number_spiral(n: int, size: float = 800.0) -> str:
    """Number-spiral layout: squares on one ray, primes darkened."""
    cv = _Canvas(size, math.sqrt(n) * 1.05 + 1.0)
    for k in range(n + 1):
        pt = numberspiral.ns_polar(k)
        ang = 2.0 * math.pi * pt.theta_rotations
        x, y = pt.r * math.cos(ang), pt.r * math.sin(ang)
        if k >= 2 and factorlab.is_prime(k):
            cv.circle(x, y, 2.4, "#222222")
        else:
            cv.circle(x, y, 1.2, "#bbbbbb")
    return cv.render()


def plot_ulam(n: int, size: float = 800.0) -> str:
    """Ulam dot plot; primes dark, corner squares tinted."""
    half = math.isqrt(n) / 2.0 + 1.5
    cv = _Canvas(size, half)
    dot = max(1.0, 0.42 * cv.scale)
    for k in range(1, n + 1):
        c = numberspiral.ulam_coord(k)
        if factorlab.is_prime(k):
            cv.circle(float(c.x), float(c.y), dot, "#222222")
        else:
            root = math.isqrt(k)
            if root * root == k:
                cv.circle(float(c.x), float(c.y), 0.7 * dot, "#2ca05a")
    return cv.render()


def plot_arms(system: ArmSystem, n_max: int, size: float = 800.0) -> str:
    """Spiral dots with one system's arms overlaid as polylines."""
    cv = _Canvas(size, math.sqrt(n_max) * 1.05 + 1.0)
    for k in range(1, n_max + 1):
        x, y = _sqrt_xy(k)
        if factorlab.is_prime(k):
            cv.circle(x, y, 2.2, "#d4a800")
        else:
            cv.circle(x, y, 0.8, "#cccccc")
    for i, arm in enumerate(system.arms):
        pts = []
        x = 1
        while arm.poly(x) <= n_max:
            pts.append(_sqrt_xy(arm.poly(x)))
            x += 1
        if len(pts) >= 2:
            cv.polyline(pts, _PALETTE[i % len(_PALETTE)], 1.4)
    return cv.render()


def plot_fig7(n_max: int, k5_poly, size: float = 800.0) -> str:
    """The K5 arm over the divisibility spirals of 7, 11 and 17."""
    cv = _Canvas(size, math.sqrt(n_max) * 1.05 + 1.0)
    colors = {7: "#f2b5a0", 11: "#b5c8f2", 17: "#b5f2c8"}
    for k in range(1, n_max + 1):
        for q, color in colors.items():
            if k % q == 0:
                x, y = _sqrt_xy(k)
                cv.circle(x, y, 2.0, color)
                break
    pts = []
    x = 1
    while k5_poly(x) <= n_max:
        pts.append(_sqrt_xy(k5_poly(x)))
        x += 1
    if len(pts) >= 2:
        cv.polyline(pts, "#d4442c", 1.6)
    return cv.render()
