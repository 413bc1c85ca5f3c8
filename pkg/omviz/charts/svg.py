"""Minimal SVG 1.1 document builder on lxml with stable number formatting."""

from __future__ import annotations

from typing import Dict, Iterable, List, Tuple

from lxml import etree

SVG_NS = "http://www.w3.org/2000/svg"


def fmt(x: float) -> str:
    """Two decimals, no negative zero, trailing zeros trimmed."""
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def points(xy: Iterable[Tuple[float, float]]) -> str:
    return " ".join(f"{fmt(x)},{fmt(y)}" for x, y in xy)


def _q(tag: str) -> str:
    return f"{{{SVG_NS}}}{tag}"


class SvgDocument:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.root = etree.Element(
            _q("svg"),
            nsmap={None: SVG_NS},
        )
        self.root.set("version", "1.1")
        self.root.set("width", str(width))
        self.root.set("height", str(height))
        self.root.set("viewBox", f"0 0 {width} {height}")
        self._layers: Dict[str, etree._Element] = {}

    @property
    def layer_names(self) -> List[str]:
        return list(self._layers)

    def layer(self, name: str) -> etree._Element:
        """Named top-level group, created on first use in call order."""
        if name not in self._layers:
            g = etree.SubElement(self.root, _q("g"))
            g.set("id", name)
            self._layers[name] = g
        return self._layers[name]

    @staticmethod
    def element(parent: etree._Element, tag: str, text: str | None = None, **attrs: str) -> etree._Element:
        el = etree.SubElement(parent, _q(tag))
        for key, value in attrs.items():
            el.set(key.rstrip("_").replace("_", "-"), value)
        if text is not None:
            el.text = text
        return el

    def rect(self, parent, x: float, y: float, w: float, h: float, fill: str, **attrs: str):
        return self.element(parent, "rect", x=fmt(x), y=fmt(y), width=fmt(w), height=fmt(h), fill=fill, **attrs)

    def line(self, parent, x1: float, y1: float, x2: float, y2: float, stroke: str, **attrs: str):
        return self.element(parent, "line", x1=fmt(x1), y1=fmt(y1), x2=fmt(x2), y2=fmt(y2), stroke=stroke, **attrs)

    def text(self, parent, x: float, y: float, content: str, **attrs: str):
        return self.element(parent, "text", content, x=fmt(x), y=fmt(y), **attrs)

    def polyline(self, parent, xy: Iterable[Tuple[float, float]], stroke: str, **attrs: str):
        return self.element(parent, "polyline", points=points(xy), fill="none", stroke=stroke, **attrs)

    def polygon(self, parent, xy: Iterable[Tuple[float, float]], fill: str, **attrs: str):
        return self.element(parent, "polygon", points=points(xy), fill=fill, **attrs)

    def tostring(self) -> str:
        return etree.tostring(
            self.root, pretty_print=True, xml_declaration=True, encoding="UTF-8"
        ).decode("utf-8")


def parse(document: str) -> etree._Element:
    return etree.fromstring(document.encode("utf-8"))


def find_layer(root: etree._Element, name: str):
    for g in root.iterfind(_q("g")):
        if g.get("id") == name:
            return g
    return None


def children(el: etree._Element, tag: str | None = None) -> List[etree._Element]:
    if tag is None:
        return [c for c in el if isinstance(c.tag, str)]
    return [c for c in el if c.tag == _q(tag)]
