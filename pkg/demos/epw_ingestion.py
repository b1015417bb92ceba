"""
Reading EnergyPlus weather
==========================

An EPW file has eight header lines followed by hourly rows. Only dry bulb
temperature and the two irradiance components are kept.
"""

import tempfile
from pathlib import Path

from kinfacade.solar import SHIRAZ
from kinfacade.weather import read_epw, read_subset, synthesize_clear_sky, write_subset

header = [
    "LOCATION,Shiraz,-,IRN,demo,408480,29.56,52.59,3.5,1484",
    "DESIGN CONDITIONS,0",
    "TYPICAL/EXTREME PERIODS,0",
    "GROUND TEMPERATURES,0",
    "HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0",
    "COMMENTS 1,demo file",
    "COMMENTS 2,",
    "DATA PERIODS,1,1,Data,Sunday, 1/ 1,12/31",
]


def row(month, day, hour, dry_bulb, dni, dhi):
    fields = ["1999", month, day, hour, 60, "x", dry_bulb] + [0] * 7 + [dni, dhi] + [0] * 19
    return ",".join(str(f) for f in fields)


# build one clear August day from the model, then write it out as EPW
day = synthesize_clear_sky(SHIRAZ, month=8, days=(10, 10))
rows = [row(r.month, r.day, r.hour, round(r.dry_bulb, 1), round(r.dni), round(r.dhi)) for r in day]
rows[12] = row(8, 10, 13, 99.9, 9999, 9999)  # a missing hour

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "shiraz_aug10.epw"
    path.write_text("\n".join(header + rows) + "\n")
    series = read_epw(path)

print(series.site)
print(len(series), "records from", series.start, "to", series.end)

# missing irradiance becomes 0, missing temperature is interpolated
print(series[12])

# the compact subset CSV reads back to the same series
text = write_subset(series.slice((8, 10, 10), (8, 10, 14)))
print(text)
print(read_subset(text, series.site) == series.slice((8, 10, 10), (8, 10, 14)))
