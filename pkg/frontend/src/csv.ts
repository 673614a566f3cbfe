import Papa from 'papaparse';

export interface PathGainMap {
  x: number[];
  y: number[];
  z: number[];
  pgLinear: number[];
  pgDb: number[];
  flag: boolean[];
}

export interface CdfCurve {
  pgDb: number[];
  prob: number[];
}

const MAP_HEADER = ['x_m', 'y_m', 'z_m', 'pg_linear', 'pg_db', 'flag'];
const CDF_HEADER = ['pg_db', 'prob'];

/** Parse a float as written by the simulator, including inf/-inf. */
function parseNumber(token: string, context: string): number {
  const trimmed = token.trim();
  if (trimmed === 'inf') return Infinity;
  if (trimmed === '-inf') return -Infinity;
  const value = Number(trimmed);
  if (trimmed === '' || Number.isNaN(value)) {
    throw new Error(`${context}: not a number: ${JSON.stringify(token)}`);
  }
  return value;
}

function parseRows(text: string, expectedHeader: string[], label: string): string[][] {
  if (text.trim() === '') {
    throw new Error(`${label}: empty file, expected header ${expectedHeader.join(',')}`);
  }
  const result = Papa.parse<string[]>(text, { skipEmptyLines: true });
  if (result.errors.length > 0) {
    const first = result.errors[0];
    throw new Error(`${label}: CSV parse error: ${first.message}`);
  }
  const rows = result.data;
  if (rows.length === 0) {
    throw new Error(`${label}: empty file, expected header ${expectedHeader.join(',')}`);
  }
  const header = rows[0].map((h) => h.trim());
  if (header.join(',') !== expectedHeader.join(',')) {
    throw new Error(
      `${label}: header mismatch: expected ${expectedHeader.join(',')}, got ${header.join(',')}`,
    );
  }
  if (rows.length === 1) {
    throw new Error(`${label}: no data rows`);
  }
  for (const [index, row] of rows.entries()) {
    if (row.length !== expectedHeader.length) {
      throw new Error(`${label}: row ${index} has ${row.length} fields, expected ${expectedHeader.length}`);
    }
  }
  return rows.slice(1);
}

export function parseMapCsv(text: string, label = 'map CSV'): PathGainMap {
  const rows = parseRows(text, MAP_HEADER, label);
  const map: PathGainMap = { x: [], y: [], z: [], pgLinear: [], pgDb: [], flag: [] };
  for (const [index, row] of rows.entries()) {
    const where = `${label} row ${index + 1}`;
    map.x.push(parseNumber(row[0], where));
    map.y.push(parseNumber(row[1], where));
    map.z.push(parseNumber(row[2], where));
    map.pgLinear.push(parseNumber(row[3], where));
    map.pgDb.push(parseNumber(row[4], where));
    const flag = row[5].trim();
    if (flag !== '0' && flag !== '1') {
      throw new Error(`${where}: flag must be 0 or 1, got ${JSON.stringify(row[5])}`);
    }
    map.flag.push(flag === '1');
  }
  return map;
}

export function parseCdfCsv(text: string, label = 'CDF CSV'): CdfCurve {
  const rows = parseRows(text, CDF_HEADER, label);
  const curve: CdfCurve = { pgDb: [], prob: [] };
  for (const [index, row] of rows.entries()) {
    const where = `${label} row ${index + 1}`;
    curve.pgDb.push(parseNumber(row[0], where));
    curve.prob.push(parseNumber(row[1], where));
  }
  for (let i = 1; i < curve.prob.length; i += 1) {
    if (curve.prob[i] < curve.prob[i - 1] || curve.pgDb[i] < curve.pgDb[i - 1]) {
      throw new Error(`${label}: samples and probabilities must be nondecreasing (row ${i + 1})`);
    }
  }
  const last = curve.prob[curve.prob.length - 1];
  if (Math.abs(last - 1.0) > 1e-9) {
    throw new Error(`${label}: cumulative probabilities must end at 1, got ${last}`);
  }
  return curve;
}
