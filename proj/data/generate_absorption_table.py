#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Regenerate absorption_itu_p676.csv.

Specific attenuation from the ITU-R P.676-12 Annex 1 line-by-line model
(via the ITU-Rpy package, `pip install itur`) at sea-level pressure,
25 degC and 60 % relative humidity, converted from dB/km to a power
absorption coefficient in 1/m.
"""
import math
import sys
import warnings

import itur.models.itu453 as itu453
import itur.models.itu676 as itu676

warnings.filterwarnings("ignore")

PRESSURE_HPA = 1013.25
TEMPERATURE_C = 25.0
REFERENCE_HUMIDITY = 0.60


def vapour_density(rh, t_c, p_hpa):
    e_s = itu453.saturation_vapour_pressure(t_c, p_hpa, "water").value
    e = rh * e_s
    return 216.7 * e / (t_c + 273.15)


def main(out):
    rho = vapour_density(REFERENCE_HUMIDITY, TEMPERATURE_C, PRESSURE_HPA)
    out.write("# Water-vapour plus oxygen absorption, ITU-R P.676-12 Annex 1 (line-by-line)\n")
    out.write(f"# p = {PRESSURE_HPA} hPa, T = {TEMPERATURE_C} degC, RH = {REFERENCE_HUMIDITY}, "
              f"rho_w = {rho:.6f} g/m^3\n")
    out.write("frequency_hz,tau_per_m,reference_humidity\n")
    for f_ghz in range(100, 1001):
        gamma_db_km = itu676.gamma_exact(f_ghz, PRESSURE_HPA, rho, TEMPERATURE_C + 273.15).value
        tau = gamma_db_km / 1000.0 * math.log(10.0) / 10.0
        out.write(f"{f_ghz}e9,{tau:.6e},{REFERENCE_HUMIDITY}\n")


if __name__ == "__main__":
    main(sys.stdout)
