#!/usr/bin/env node
/**
 * Render wptsim CSV artifacts as SVG figures.
 *
 *   render heatmap --in map.csv --manifest manifest.json --out map.svg
 *   render cdf --in cdf_a.csv cdf_b.csv --outage 0.01 --out cdf.svg
 */

import { readFileSync, writeFileSync } from 'fs';
import { basename } from 'path';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { renderCdf } from './cdf.js';
import { parseCdfCsv, parseMapCsv } from './csv.js';
import { renderHeatmap } from './heatmap.js';
import { Manifest, parseManifest } from './manifest.js';

function readText(path: string): string {
  return readFileSync(path, 'utf8');
}

function curveLabel(path: string): string {
  const name = basename(path).replace(/\.csv$/, '');
  return name.startsWith('cdf_') ? name.slice(4) : name;
}

export function runHeatmap(args: {
  in: string;
  manifest?: string;
  out: string;
  dbMin?: number;
  dbMax?: number;
  title?: string;
}): void {
  const map = parseMapCsv(readText(args.in), basename(args.in));
  let manifest: Manifest | null = null;
  if (args.manifest) {
    manifest = parseManifest(readText(args.manifest), basename(args.manifest));
  }
  const svg = renderHeatmap(map, manifest, {
    dbMin: args.dbMin,
    dbMax: args.dbMax,
    title: args.title,
  });
  writeFileSync(args.out, svg);
}

export function runCdf(args: { in: string[]; out: string; outage?: number; title?: string }): void {
  const curves = args.in.map((path) => ({
    label: curveLabel(path),
    curve: parseCdfCsv(readText(path), basename(path)),
  }));
  const svg = renderCdf(curves, { outage: args.outage, title: args.title });
  writeFileSync(args.out, svg);
}

export async function main(argv: string[]): Promise<number> {
  try {
    await yargs(argv)
      .scriptName('render')
      .command(
        'heatmap',
        'render a path-gain map CSV as a heatmap',
        (cmd) =>
          cmd
            .option('in', { type: 'string', demandOption: true, describe: 'map CSV file' })
            .option('manifest', { type: 'string', describe: 'run manifest JSON (room outline and markers)' })
            .option('out', { type: 'string', demandOption: true, describe: 'output SVG file' })
            .option('db-min', { type: 'number', describe: 'color range lower bound, dB' })
            .option('db-max', { type: 'number', describe: 'color range upper bound, dB' })
            .option('title', { type: 'string' }),
        (args) =>
          runHeatmap({
            in: args.in,
            manifest: args.manifest,
            out: args.out,
            dbMin: args.dbMin,
            dbMax: args.dbMax,
            title: args.title,
          }),
      )
      .command(
        'cdf',
        'render CDF CSVs with a log probability axis',
        (cmd) =>
          cmd
            .option('in', { type: 'string', array: true, demandOption: true, describe: 'CDF CSV files' })
            .option('out', { type: 'string', demandOption: true, describe: 'output SVG file' })
            .option('outage', { type: 'number', describe: 'horizontal outage-probability line' })
            .option('title', { type: 'string' }),
        (args) => runCdf({ in: args.in, out: args.out, outage: args.outage, title: args.title }),
      )
      .demandCommand(1, 'specify a figure kind: heatmap or cdf')
      .strict()
      .fail((msg, error) => {
        throw error ?? new Error(msg);
      })
      .parseAsync();
    return 0;
  } catch (error) {
    console.error(`render: ${(error as Error).message}`);
    return 1;
  }
}

const invokedDirectly = process.argv[1] !== undefined && import.meta.url.endsWith(basename(process.argv[1]));
if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
