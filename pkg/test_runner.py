#!/usr/bin/env python3
import argparse
import glob
import os
import shutil
import subprocess
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed

# =============================================================================
# Utility Functions
# =============================================================================

RESULTS_DIR = 'allure-results'
MERGED_DIR = 'reports/allure-results'


def clean_allure_results():
    """Clean previous allure results and reports."""
    for path in [RESULTS_DIR, MERGED_DIR, 'reports/allure-report']:
        if os.path.exists(path):
            shutil.rmtree(path)
            print(f"🧹 Cleaned previous {path}")


def merge_allure_results():
    """Merge the per-feature Allure result directories into one, skipping empty files."""
    if not os.path.exists(RESULTS_DIR):
        print("❌ No allure-results directory found to merge.")
        return None

    os.makedirs(MERGED_DIR, exist_ok=True)
    copied = 0
    for root, _, files in os.walk(RESULTS_DIR):
        for f in files:
            src = os.path.join(root, f)
            if f.endswith(('.json', '.txt', '.xml')) and os.path.getsize(src) > 0:
                shutil.copy(src, os.path.join(MERGED_DIR, f))
                copied += 1

    print(f"✅ Merged {copied} Allure result files into {MERGED_DIR}")
    return MERGED_DIR


def generate_allure_report(results_dir, serve=False):
    """Generate or serve the Allure report."""
    print("\n" + "="*80)
    print("📊 Generating Allure Report...")
    print("="*80)

    if not shutil.which('allure'):
        print("❌ Allure command not found!")
        print("  Docs: https://docs.qameta.io/allure/#_installing_a_commandline")
        return False

    try:
        if serve:
            subprocess.run(['allure', 'serve', results_dir], check=True)
        else:
            subprocess.run(['allure', 'generate', results_dir, '--clean', '-o', 'reports/allure-report'], check=True)
            print("✅ Report generated: reports/allure-report/index.html")
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ Error generating Allure report: {e}")
        return False


# =============================================================================
# Check Execution
# =============================================================================

def run_feature(feature_file, slow=False, use_allure=False, threads=1):
    """Run one feature file in its own behave process."""
    cmd = ['behave', feature_file, '--no-capture']
    if slow:
        # an explicit tag expression replaces default_tags from behave.ini
        cmd.append('--tags=@slow,~@slow')
    if use_allure:
        out_dir = os.path.join(RESULTS_DIR, os.path.splitext(os.path.basename(feature_file))[0])
        os.makedirs(out_dir, exist_ok=True)
        cmd.extend(['--format', 'allure_behave.formatter:AllureFormatter', '--outfile', out_dir])

    env = {**os.environ, 'LPL_THREADS': str(threads)}
    result = subprocess.run(cmd, text=True, env=env)
    return {'name': feature_file, 'returncode': result.returncode}


# =============================================================================
# Main Runner
# =============================================================================

def main():
    parser = argparse.ArgumentParser(description='Run the kernel checks, one behave process per feature')
    parser.add_argument('--features', nargs='*', help='Feature files (default: features/*.feature)')
    parser.add_argument('--workers', type=int, default=4, help='Number of feature processes')
    parser.add_argument('--slow', action='store_true', help='Include the @slow acceptance scenarios')
    parser.add_argument('--report', action='store_true', help='Generate Allure report after the run')
    parser.add_argument('--serve', action='store_true', help='Generate and serve Allure report in browser (implies --report)')
    parser.add_argument('--clean', action='store_true', help='Clean previous allure results before running')
    args = parser.parse_args()

    if args.serve:
        args.report = True
    if args.clean:
        clean_allure_results()

    feature_files = args.features or sorted(glob.glob('features/*.feature'))
    if not feature_files:
        print("No feature files found!")
        sys.exit(1)

    # split the numeric worker threads between the feature processes
    threads = max(1, (os.cpu_count() or 1) // max(1, args.workers))
    print(f"Found {len(feature_files)} feature files, {args.workers} processes x {threads} threads")
    print("="*80)

    failed, passed = [], []
    with ProcessPoolExecutor(max_workers=args.workers) as executor:
        futures = {executor.submit(run_feature, f, args.slow, args.report, threads): f for f in feature_files}
        for future in as_completed(futures):
            result = future.result()
            if result['returncode'] == 0:
                passed.append(result['name'])
                print(f"✅ PASSED: {result['name']}")
            else:
                failed.append(result['name'])
                print(f"❌ FAILED: {result['name']}")

    print("="*80)
    print(f"✅ Passed: {len(passed)}")
    print(f"❌ Failed: {len(failed)}")
    if failed:
        print("\nFailed features:")
        for f in failed:
            print(f"  - {f}")
    else:
        print("\n🎉 All checks passed!")

    if args.report:
        merged_dir = merge_allure_results()
        if merged_dir:
            generate_allure_report(merged_dir, serve=args.serve)

    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
