import pytest

from compograph.catalog_io import parse_catalog_text
from compograph.graph import Node, build_model
from compograph.types import TypeSet

WEATHER_DSL = """\
collection weather-ws
s1 : city -> longitude latitude
s2 : longitude latitude -> weather
s3 : zipcode -> longitude latitude
s4 : zipcode -> weather
s5 : longitude latitude road -> zipcode
s6 : city -> zipcode
"""


def node(name: str, ti: str, to: str) -> Node:
    return Node(name, TypeSet.parse(ti), TypeSet.parse(to))


N_S1 = node("s1", "city", "latitude,longitude")
N_S2A = node("s2", "city,latitude,longitude", "latitude,longitude,weather")
N_S2B = node("s2", "city,latitude,longitude,road", "latitude,longitude,weather,zipcode")
N_S4 = node("s4", "city,latitude,longitude,road,zipcode", "latitude,longitude,weather,zipcode")
N_S5A = node("s5", "city,latitude,longitude,road", "latitude,longitude,zipcode")
N_S5B = node("s5", "city,latitude,longitude,road", "latitude,longitude,weather,zipcode")

WEATHER_NODES = frozenset({N_S1, N_S2A, N_S2B, N_S4, N_S5A, N_S5B})
WEATHER_EDGES = frozenset(
    {
        (N_S1, N_S2A),
        (N_S1, N_S5A),
        (N_S2A, N_S5B),
        (N_S5A, N_S2B),
        (N_S5A, N_S4),
    }
)


@pytest.fixture(scope="session")
def weather_catalog():
    return parse_catalog_text(WEATHER_DSL)


@pytest.fixture(scope="session")
def weather_model(weather_catalog):
    return build_model(weather_catalog, "s1")


@pytest.fixture()
def weather_svc_file(tmp_path):
    path = tmp_path / "weather.svc"
    path.write_text(WEATHER_DSL, encoding="utf-8")
    return path
