/** Trailing-edge debounce: at most one call per `waitMs` of continuous input. */
export function debounce<A extends unknown[]>(
    fn: (...args: A) => void,
    waitMs: number,
): (...args: A) => void {
    let timer: ReturnType<typeof setTimeout> | undefined;
    return (...args: A) => {
        if (timer !== undefined) {
            clearTimeout(timer);
        }
        timer = setTimeout(() => {
            timer = undefined;
            fn(...args);
        }, waitMs);
    };
}
